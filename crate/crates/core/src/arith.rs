//! Integer arithmetic at desk scale: factorization, squarefree parts,
//! Kronecker symbols and quadratic Dirichlet characters.

use serde::Serialize;

use crate::error::{Error, Result};

/// Exact rationals, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64` (the first twelve prime bases suffice).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, stopping early once the cofactor
/// is certified prime.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut p = 2u64;
    let mut certified = is_prime(n);
    while !certified && p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
            certified = is_prime(n);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The squarefree `s` with `n = s·m²`, sign preserved.
pub fn squarefree_part(n: i64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let core: i64 = factor(n.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p as i64)
        .product();
    Ok(n.signum() * core)
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factor(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Whether `n` is the square of an integer (negative numbers never are).
pub fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = num_integer::Roots::sqrt(&n);
    r * r == n
}

/// Discriminant of `Q(√d)`: `d` when `d ≡ 1 (mod 4)`, else `4d`.
pub fn fundamental_discriminant(d: i64) -> Result<i64> {
    if d == 0 {
        return Err(Error::Zero);
    }
    if !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    Ok(if d.rem_euclid(4) == 1 { d } else { 4 * d })
}

fn jacobi(a: i128, n: i128) -> i8 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// The Kronecker symbol `(a/n)` for arbitrary integers, including `n ≤ 0`
/// and even `n`.
pub fn kronecker(a: i64, n: i64) -> i8 {
    let a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return i8::from(a == 1 || a == -1);
    }
    let mut t = 1i8;
    if n < 0 {
        n = -n;
        if a < 0 {
            t = -t;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= twos;
        let r = a.rem_euclid(8);
        if twos % 2 == 1 && (r == 3 || r == 5) {
            t = -t;
        }
    }
    if n == 1 {
        return t;
    }
    t * jacobi(a, n)
}

/// A primitive quadratic Dirichlet character, identified by its
/// fundamental discriminant (`1` for the trivial character).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadChar {
    disc: i64,
}

impl QuadChar {
    pub const TRIVIAL: QuadChar = QuadChar { disc: 1 };

    /// Validates that `disc` is 1 or a fundamental discriminant.
    pub fn new(disc: i64) -> Result<Self> {
        let ok = match disc.rem_euclid(4) {
            1 => is_squarefree(disc),
            0 => {
                let m = disc / 4;
                matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
            }
            _ => false,
        };
        if ok {
            Ok(QuadChar { disc })
        } else {
            Err(Error::NotFundamental(disc))
        }
    }

    /// The character `χ_d` attached to `Q(√d)`, `d` squarefree.
    pub fn of_field(d: i64) -> Result<Self> {
        Ok(QuadChar {
            disc: fundamental_discriminant(d)?,
        })
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn conductor(&self) -> u64 {
        self.disc.unsigned_abs()
    }

    pub fn is_trivial(&self) -> bool {
        self.disc == 1
    }

    pub fn eval(&self, n: i64) -> i8 {
        kronecker(self.disc, n)
    }

    /// Values on `0..conductor`, for table lookups in long sums.
    pub fn period_table(&self) -> Vec<i8> {
        (0..self.conductor() as i64).map(|n| self.eval(n)).collect()
    }
}

/// `χ_d(n)` for squarefree `d`.
pub fn chi(d: i64, n: i64) -> Result<i8> {
    Ok(QuadChar::of_field(d)?.eval(n))
}
