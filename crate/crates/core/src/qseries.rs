//! Truncated q-expansions with arbitrary-precision coefficients.
//!
//! A [`QSeries`] truncated at `N` stores the coefficients of `q⁰ … q^N`.
//! Binary operations return the tightest sound truncation of their inputs
//! instead of failing on mismatches; operators that lose precision (Hecke
//! operators, the Shimura lift) report their shrunken truncation explicitly.

use std::io::Write;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::QuadChar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    /// Wraps `coeffs[n]` as the coefficient of `qⁿ`; the truncation is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a q-series needs at least the constant term");
        QSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(trunc: usize) -> Self {
        QSeries {
            coeffs: vec![BigInt::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(0, trunc)
    }

    /// `qⁿ` truncated at `trunc` (the zero series if `n > trunc`).
    pub fn monomial(n: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if n <= trunc {
            s.coeffs[n] = BigInt::one();
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `qⁿ`. Panics past the truncation: reading there would
    /// silently return a wrong value.
    pub fn coeff(&self, n: usize) -> &BigInt {
        assert!(
            n <= self.trunc(),
            "read of q^{n} beyond truncation q^{}",
            self.trunc()
        );
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops everything above `q^trunc`; never extends.
    pub fn truncate(&self, trunc: usize) -> Self {
        let t = trunc.min(self.trunc());
        QSeries {
            coeffs: self.coeffs[..=t].to_vec(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    /// Coefficients as machine integers, if they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// `f|V(m)`: the coefficient of `qⁿ` becomes that of `q^{n/m}` when
    /// `m | n`, else zero. Truncation is preserved.
    pub fn v_operator(&self, m: usize) -> Self {
        assert!(m >= 1, "V(m) needs m ≥ 1");
        let mut out = Self::zero(self.trunc());
        for n in (0..=self.trunc()).step_by(m) {
            out.coeffs[n] = self.coeffs[n / m].clone();
        }
        out
    }

    /// Coefficient-wise product with a quadratic character.
    pub fn twist(&self, chi: &QuadChar) -> Self {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| match chi.eval(n as i64) {
                    1 => a.clone(),
                    -1 => -a,
                    _ => BigInt::zero(),
                })
                .collect(),
        }
    }

    /// Writes `n,coefficient` rows with a header line.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["n", "coefficient"])?;
        for (n, c) in self.coeffs.iter().enumerate() {
            wr.write_record([n.to_string(), c.to_string()])?;
        }
        wr.flush()?;
        Ok(())
    }

    fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let t = self.trunc().min(rhs.trunc());
        QSeries {
            coeffs: (0..=t).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let t = self.trunc().min(rhs.trunc());
        QSeries {
            coeffs: (0..=t).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect(),
        }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Cauchy product truncated at the smaller truncation. Cost is
/// `nnz(f)·nnz(g)`, so multiplying by sparse factors (eta products) is cheap.
impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let t = self.trunc().min(rhs.trunc());
        let (dense, sparse) = if self.nonzero_terms().count() >= rhs.nonzero_terms().count() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = vec![BigInt::zero(); t + 1];
        let one = BigInt::one();
        let minus_one = -BigInt::one();
        for (j, g) in sparse.nonzero_terms() {
            if j > t {
                break;
            }
            for (i, f) in dense.coeffs[..=t - j].iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                if *g == one {
                    out[i + j] += f;
                } else if *g == minus_one {
                    out[i + j] -= f;
                } else {
                    out[i + j] += f * g;
                }
            }
        }
        QSeries { coeffs: out }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `∏_{n≥1} (1 − q^{mn})` from Euler's pentagonal theorem:
/// `Σ_k (−1)^k q^{m·k(3k−1)/2}` over all integers `k`.
fn pentagonal(m: usize, trunc: usize) -> QSeries {
    let mut s = QSeries::one(trunc);
    for k in 1usize.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let lo = m * k * (3 * k - 1) / 2;
        let hi = m * k * (3 * k + 1) / 2;
        if lo > trunc {
            break;
        }
        s.coeffs[lo] += sign;
        if hi <= trunc {
            s.coeffs[hi] += sign;
        }
    }
    s
}

/// `1/g` for a series with constant term 1.
fn invert_unit(g: &QSeries) -> QSeries {
    assert!(g.coeffs[0].is_one(), "only unit-constant series are inverted here");
    let t = g.trunc();
    let support: Vec<(usize, &BigInt)> = g.nonzero_terms().skip(1).collect();
    let mut c = vec![BigInt::zero(); t + 1];
    c[0] = BigInt::one();
    for n in 1..=t {
        let mut acc = BigInt::zero();
        for &(k, b) in &support {
            if k > n {
                break;
            }
            acc -= b * &c[n - k];
        }
        c[n] = acc;
    }
    QSeries { coeffs: c }
}

/// Expansion of `∏_{n≥1} (1 − q^{mn})^e` to `q^trunc`; negative `e` uses the
/// inverse of the positive power.
pub fn eta_factor(m: usize, e: i32, trunc: usize) -> QSeries {
    assert!(m >= 1, "eta_factor needs m ≥ 1");
    let base = pentagonal(m, trunc);
    let mut acc = QSeries::one(trunc);
    for _ in 0..e.unsigned_abs() {
        acc = &acc * &base;
    }
    if e < 0 {
        invert_unit(&acc)
    } else {
        acc
    }
}

/// The weight-2 newform of level 27, `F = q ∏ (1 − q³ⁿ)²(1 − q⁹ⁿ)²`, to
/// `q^trunc`. Its coefficients `λ(n)` are the traces of Frobenius of
/// `Y² = X³ − 432`.
pub fn build_f(trunc: usize) -> QSeries {
    assert!(trunc >= 1, "F starts at q^1");
    let inner = trunc - 1;
    let p3 = pentagonal(3, inner);
    let p9 = pentagonal(9, inner);
    let prod = &(&(&p3 * &p3) * &p9) * &p9;
    let mut coeffs = Vec::with_capacity(trunc + 1);
    coeffs.push(BigInt::zero());
    coeffs.extend(prod.coeffs);
    QSeries { coeffs }
}
