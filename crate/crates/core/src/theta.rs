//! Positive-definite ternary quadratic forms and their theta series.
//!
//! Two independent counting paths are provided. [`count_reps`] handles one
//! `n` at a time by solving for the last coordinate exactly. [`batch_counts`]
//! visits every lattice point of the ellipsoid `Q ≤ N` once and bins it,
//! which is how whole theta series are produced.

use num_bigint::BigInt;
use num_integer::Roots;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{fundamental_discriminant, squarefree_part};
use crate::error::{Error, Result};
use crate::qseries::QSeries;

/// Default sieve memory cap in MiB when `CUBEFERMAT_MEM_MB` is unset.
pub const DEFAULT_MEM_MB: u64 = 4096;

/// `Q(v) = ½·vᵀAv` for a symmetric integer matrix `A` with even diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TernaryForm {
    gram: [[i64; 3]; 3],
}

/// `x² + 3y² + 27z²`
pub const Q1: TernaryForm = TernaryForm {
    gram: [[2, 0, 0], [0, 6, 0], [0, 0, 54]],
};
/// `3x² + 4y² − 2yz + 7z²`
pub const Q2: TernaryForm = TernaryForm {
    gram: [[6, 0, 0], [0, 8, -2], [0, -2, 14]],
};
/// `x² + y² + 7z² + xz`
pub const Q3: TernaryForm = TernaryForm {
    gram: [[2, 0, 1], [0, 2, 0], [1, 0, 14]],
};
/// `x² + 2y² + 4z² + xy + yz`
pub const Q4: TernaryForm = TernaryForm {
    gram: [[2, 1, 0], [1, 4, 1], [0, 1, 8]],
};

impl TernaryForm {
    pub fn new(gram: [[i64; 3]; 3]) -> Result<Self> {
        for i in 0..3 {
            if gram[i][i] % 2 != 0 {
                return Err(Error::InvalidForm("diagonal entries must be even"));
            }
            for j in 0..3 {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidForm("Gram matrix must be symmetric"));
                }
            }
        }
        let f = TernaryForm { gram };
        let m1 = gram[0][0];
        let m2 = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0];
        if m1 <= 0 || m2 <= 0 || f.det() <= 0 {
            return Err(Error::InvalidForm("Gram matrix must be positive definite"));
        }
        Ok(f)
    }

    pub fn gram(&self) -> [[i64; 3]; 3] {
        self.gram
    }

    /// `det A`.
    pub fn det(&self) -> i64 {
        let a = &self.gram;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    /// Adjugate, so that `A⁻¹ = adj(A) / det(A)`.
    pub fn adjugate(&self) -> [[i64; 3]; 3] {
        let a = &self.gram;
        let mut adj = [[0i64; 3]; 3];
        for (i, row) in adj.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                // cofactor of (j, i)
                let r: Vec<usize> = (0..3).filter(|&k| k != j).collect();
                let c: Vec<usize> = (0..3).filter(|&k| k != i).collect();
                let minor = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]];
                *entry = if (i + j) % 2 == 0 { minor } else { -minor };
            }
        }
        adj
    }

    pub fn value(&self, v: [i64; 3]) -> i64 {
        let a = &self.gram;
        let mut twice = 0;
        for i in 0..3 {
            for j in 0..3 {
                twice += a[i][j] * v[i] * v[j];
            }
        }
        twice / 2
    }

    /// `max |v_i|` over `Q(v) ≤ n`: `v_i² ≤ 2n·(A⁻¹)_ii`.
    fn axis_bound(&self, i: usize, n: u64) -> i64 {
        let num = 2 * n as i128 * self.adjugate()[i][i] as i128;
        ((num / self.det() as i128) as u128).sqrt() as i64
    }

    /// Same form with coordinates permuted so the smallest diagonal entry
    /// comes last.
    fn with_smallest_diagonal_last(&self) -> TernaryForm {
        let k = (0..3).min_by_key(|&i| self.gram[i][i]).unwrap_or(2);
        let mut perm = [0, 1, 2];
        perm.swap(k, 2);
        let mut g = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = self.gram[perm[i]][perm[j]];
            }
        }
        TernaryForm { gram: g }
    }
}

/// Number of `v ∈ Z³` with `Q(v) = n`.
pub fn count_reps(form: &TernaryForm, n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    let a = form.gram();
    let bx = form.axis_bound(0, n);
    let by = form.axis_bound(1, n);
    let c = a[2][2] as i128;
    let two_n = 2 * n as i128;
    let mut count = 0;
    for x in -bx..=bx {
        for y in -by..=by {
            let (x, y) = (x as i128, y as i128);
            // 2Q = c·z² + 2·l·z + r
            let l = a[0][2] as i128 * x + a[1][2] as i128 * y;
            let r = a[0][0] as i128 * x * x + 2 * a[0][1] as i128 * x * y + a[1][1] as i128 * y * y;
            let disc = l * l - c * (r - two_n);
            if disc < 0 {
                continue;
            }
            let s = (disc as u128).sqrt() as i128;
            if s * s != disc {
                continue;
            }
            if (-l + s) % c == 0 {
                count += 1;
            }
            if s != 0 && (-l - s) % c == 0 {
                count += 1;
            }
        }
    }
    count
}

/// `r_{Q1}(n) − r_{Q2}(n)`.
pub fn coeff_a(n: u64) -> i64 {
    count_reps(&Q1, n) as i64 - count_reps(&Q2, n) as i64
}

/// `r_{Q3}(n) − r_{Q4}(n)`.
pub fn coeff_b(n: u64) -> i64 {
    count_reps(&Q3, n) as i64 - count_reps(&Q4, n) as i64
}

fn floor_div(a: i64, b: i64) -> i64 {
    num_integer::Integer::div_floor(&a, &b)
}

/// Walks `w ↦ Q(u, v, w)` outward from its real minimum and bins every value
/// `≤ limit`. Convexity makes the two walks exact.
#[inline]
fn bin_line(g: &[[i64; 3]; 3], u: i64, v: i64, limit: i64, hist: &mut [u32]) {
    let c = g[2][2];
    let hc = c / 2;
    let l = g[0][2] * u + g[1][2] * v;
    let q0 = (g[0][0] * u * u + 2 * g[0][1] * u * v + g[1][1] * v * v) / 2;
    let w0 = floor_div(c - 2 * l, 2 * c);
    let at = |w: i64| hc * w * w + l * w + q0;

    let mut q = at(w0);
    let mut step = hc * (2 * w0 + 1) + l;
    while q <= limit {
        hist[q as usize] += 1;
        q += step;
        step += c;
    }
    let mut q = at(w0 - 1);
    let mut step = hc * (3 - 2 * w0) - l;
    while q <= limit {
        hist[q as usize] += 1;
        q += step;
        step += c;
    }
}

/// Half-lattice sieve for one shard: counts each pair `{v, −v}` once via
/// its representative whose first nonzero coordinate is positive, over the
/// `u` values `≡ shard (mod shards)`.
fn sieve_shard(form: &TernaryForm, limit: u64, shard: usize, shards: usize) -> Vec<u32> {
    let g = form.gram();
    let n = limit as i64;
    let mut hist = vec![0u32; limit as usize + 1];
    let c = g[2][2];
    let hc = c / 2;
    // 2c·min_w Q(u, v, w) = α v² + 2β v + γ
    let alpha = c * g[1][1] - g[1][2] * g[1][2];
    let beta_per_u = c * g[0][1] - g[0][2] * g[1][2];
    let gamma_per_u2 = c * g[0][0] - g[0][2] * g[0][2];
    let bound = 2 * c * n;
    let h = |u: i64, v: i64| alpha * v * v + 2 * beta_per_u * u * v + gamma_per_u2 * u * u;

    let umax = form.axis_bound(0, limit);
    for u in (shard as i64..=umax).step_by(shards) {
        if u == 0 {
            let mut v = 1;
            while h(0, v) <= bound {
                bin_line(&g, 0, v, n, &mut hist);
                v += 1;
            }
            let mut w = 1;
            while hc * w * w <= n {
                hist[(hc * w * w) as usize] += 1;
                w += 1;
            }
            continue;
        }
        let beta = beta_per_u * u;
        let v0 = floor_div(alpha - 2 * beta, 2 * alpha);
        let mut v = v0;
        while h(u, v) <= bound {
            bin_line(&g, u, v, n, &mut hist);
            v += 1;
        }
        let mut v = v0 - 1;
        while h(u, v) <= bound {
            bin_line(&g, u, v, n, &mut hist);
            v -= 1;
        }
    }
    hist
}

fn sieve(form: &TernaryForm, limit: u64, shards: usize) -> Vec<u32> {
    let permuted = form.with_smallest_diagonal_last();
    let parts: Vec<Vec<u32>> = (0..shards)
        .into_par_iter()
        .map(|s| sieve_shard(&permuted, limit, s, shards))
        .collect();
    let mut parts = parts.into_iter();
    let mut total = parts.next().unwrap_or_else(|| vec![0; limit as usize + 1]);
    for part in parts {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    for t in total.iter_mut() {
        *t *= 2;
    }
    total[0] += 1;
    total
}

/// Memory cap for sieve histograms, from `CUBEFERMAT_MEM_MB`.
pub fn mem_limit_mb() -> u64 {
    std::env::var("CUBEFERMAT_MEM_MB")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MEM_MB)
}

/// `r_Q(n)` for all `0 ≤ n ≤ limit`, computed by `shards` independent
/// sieves over disjoint classes of the first coordinate, merged by summation.
/// The result does not depend on `shards`.
pub fn batch_counts(form: &TernaryForm, limit: u64, shards: usize) -> Result<Vec<u32>> {
    if limit == 0 {
        return Err(Error::InvalidArgument("sieve limit must be at least 1".into()));
    }
    if shards == 0 {
        return Err(Error::InvalidArgument("shard count must be at least 1".into()));
    }
    let bytes = (shards as u64 + 1) * (limit + 1) * std::mem::size_of::<u32>() as u64;
    let requested_mb = bytes.div_ceil(1 << 20);
    let limit_mb = mem_limit_mb();
    if requested_mb > limit_mb {
        return Err(Error::MemoryBudget {
            requested_mb,
            limit_mb,
        });
    }
    Ok(sieve(form, limit, shards))
}

/// `θ_Q = Σ r_Q(n) qⁿ` to `q^trunc`, from a single sieve pass.
pub fn theta_series(form: &TernaryForm, trunc: usize) -> QSeries {
    let counts = sieve(form, trunc.max(1) as u64, 1);
    QSeries::from_coeffs(counts[..=trunc].iter().map(|&c| BigInt::from(c)).collect())
}

/// Level and character of `θ_Q`: the least `N` with `N·A⁻¹` integral with
/// even diagonal, and the fundamental discriminant attached to `det(2A)`.
pub fn theta_level(form: &TernaryForm) -> (u64, i64) {
    let det = form.det();
    let adj = form.adjugate();
    let ok = |n: i64| {
        (0..3).all(|i| {
            (0..3).all(|j| {
                let x = n * adj[i][j];
                x % det == 0 && (i != j || (x / det) % 2 == 0)
            })
        })
    };
    // N = 2·det always works: 2·adj is integral with even diagonal.
    let level = (1..=2 * det).find(|&n| ok(n)).unwrap_or(2 * det);
    let det2a = 8 * det;
    let core = squarefree_part(det2a).expect("positive definite forms have det > 0");
    let disc = fundamental_discriminant(core).expect("squarefree by construction");
    (level as u64, disc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [TernaryForm; 4] = [Q1, Q2, Q3, Q4];

    /// Oracle: plain triple loop over a generous box.
    fn brute_counts(form: &TernaryForm, limit: i64) -> Vec<u64> {
        let b = 3 * (limit as f64).sqrt() as i64 + 3;
        let mut out = vec![0u64; limit as usize + 1];
        for x in -b..=b {
            for y in -b..=b {
                for z in -b..=b {
                    let q = form.value([x, y, z]);
                    if q <= limit {
                        out[q as usize] += 1;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn named_forms_are_valid() {
        for f in ALL {
            assert_eq!(TernaryForm::new(f.gram()).unwrap(), f);
        }
        assert_eq!(Q1.value([1, 1, 1]), 31);
        assert_eq!(Q2.value([0, 1, 1]), 9);
        assert_eq!(Q3.value([1, 0, 1]), 9);
        assert_eq!(Q4.value([1, 1, 1]), 9);
    }

    #[test]
    fn invalid_forms_rejected() {
        assert!(TernaryForm::new([[1, 0, 0], [0, 2, 0], [0, 0, 2]]).is_err());
        assert!(TernaryForm::new([[2, 1, 0], [0, 2, 0], [0, 0, 2]]).is_err());
        assert!(TernaryForm::new([[2, 3, 0], [3, 2, 0], [0, 0, 2]]).is_err());
        assert!(TernaryForm::new([[-2, 0, 0], [0, 2, 0], [0, 0, 2]]).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_reps(&Q1, 0), 1);
        assert_eq!(count_reps(&Q1, 1), 2);
        assert_eq!(count_reps(&Q2, 1), 0);
        assert_eq!(count_reps(&Q3, 2), 4);
        assert_eq!(count_reps(&Q4, 2), 4);
        assert_eq!(coeff_b(2), 0);
        assert_eq!(coeff_a(2), 0);
    }

    #[test]
    fn count_reps_matches_brute_force() {
        for f in ALL {
            let brute = brute_counts(&f, 80);
            for n in 0..=80u64 {
                assert_eq!(count_reps(&f, n), brute[n as usize], "{f:?} n={n}");
            }
        }
    }

    #[test]
    fn sieve_matches_brute_force() {
        for f in ALL {
            let brute = brute_counts(&f, 120);
            let sieve = theta_series(&f, 120).to_i64_vec().unwrap();
            for n in 0..=120 {
                assert_eq!(sieve[n] as u64, brute[n], "{f:?} n={n}");
            }
        }
    }

    #[test]
    fn sieve_handles_unusual_forms() {
        // Non-reduced forms with large off-diagonal entries stress the walks.
        for gram in [
            [[2, 0, 0], [0, 2, 0], [0, 0, 2]],
            [[10, 7, 3], [7, 10, -4], [3, -4, 12]],
            [[4, -3, 1], [-3, 4, -1], [1, -1, 2]],
        ] {
            let f = TernaryForm::new(gram).unwrap();
            let brute = brute_counts(&f, 60);
            let sieve = batch_counts(&f, 60, 3).unwrap();
            for n in 0..=60 {
                assert_eq!(sieve[n] as u64, brute[n], "{gram:?} n={n}");
                assert_eq!(count_reps(&f, n as u64), brute[n]);
            }
        }
    }

    #[test]
    fn shards_do_not_change_counts() {
        for f in ALL {
            let one = batch_counts(&f, 3000, 1).unwrap();
            for s in [2, 4, 8] {
                assert_eq!(batch_counts(&f, 3000, s).unwrap(), one);
            }
            let series = theta_series(&f, 3000).to_i64_vec().unwrap();
            assert!(one.iter().zip(series).all(|(&a, b)| a as i64 == b));
        }
    }

    #[test]
    fn nonzero_counts_are_even() {
        for f in ALL {
            let c = batch_counts(&f, 2000, 1).unwrap();
            assert_eq!(c[0], 1);
            assert!(c[1..].iter().all(|x| x % 2 == 0));
        }
    }

    #[test]
    fn batch_counts_argument_errors() {
        assert!(batch_counts(&Q1, 0, 1).is_err());
        assert!(batch_counts(&Q1, 10, 0).is_err());
    }

    #[test]
    fn theta_levels() {
        assert_eq!(Q1.det() * 8, 5184);
        assert_eq!(theta_level(&Q1), (108, 1));
        assert_eq!(theta_level(&Q2), (108, 1));
        assert_eq!(Q3.det() * 8, 432);
        assert_eq!(theta_level(&Q3), (108, 12));
        assert_eq!(theta_level(&Q4), (108, 12));
        let unit = TernaryForm::new([[2, 0, 0], [0, 2, 0], [0, 0, 2]]).unwrap();
        assert_eq!(theta_level(&unit), (4, 1));
    }

    #[test]
    fn adjugate_inverts() {
        for f in ALL {
            let a = f.gram();
            let adj = f.adjugate();
            for i in 0..3 {
                for j in 0..3 {
                    let e: i64 = (0..3).map(|k| a[i][k] * adj[k][j]).sum();
                    assert_eq!(e, if i == j { f.det() } else { 0 });
                }
            }
        }
    }
}
