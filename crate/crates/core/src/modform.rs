//! Hecke operators, the Shimura lift and Sturm bounds on truncated
//! q-expansions.
//!
//! Every operator checks that its input carries enough coefficients and
//! returns a series whose truncation is exactly the depth it can vouch for.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{factor, is_prime, is_squarefree, kronecker, QuadChar};
use crate::error::{Error, Result};
use crate::qseries::QSeries;

/// Weight (stored doubled), level and nebentypus of a space of modular forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormContext {
    pub weight_twice: u32,
    pub level: u64,
    pub character: QuadChar,
}

impl FormContext {
    pub fn new(weight_twice: u32, level: u64, character: QuadChar) -> Result<Self> {
        if !matches!(weight_twice, 3 | 4) {
            return Err(Error::InvalidContext(format!(
                "only weights 3/2 and 2 are supported, got {weight_twice}/2"
            )));
        }
        if level == 0 {
            return Err(Error::InvalidContext("level must be positive".into()));
        }
        if weight_twice == 3 && level % 4 != 0 {
            return Err(Error::InvalidContext(format!(
                "half-integral weight needs 4 | level, got {level}"
            )));
        }
        Ok(FormContext {
            weight_twice,
            level,
            character,
        })
    }

    /// `S₂(Γ₀(level))` with trivial character.
    pub fn weight2(level: u64) -> Self {
        FormContext {
            weight_twice: 4,
            level,
            character: QuadChar::TRIVIAL,
        }
    }

    /// `M_{3/2}(Γ₀(level), χ)`; `level` must be divisible by 4.
    pub fn weight3_2(level: u64, character: QuadChar) -> Result<Self> {
        Self::new(3, level, character)
    }

    /// The character as a Dirichlet character modulo the level: zero on
    /// integers sharing a prime with the level (with 2 always included for
    /// half-integral weight).
    pub fn chi(&self, n: i64) -> i8 {
        let modulus = if self.weight_twice == 3 {
            4 * self.level
        } else {
            self.level
        };
        if n.unsigned_abs().gcd(&modulus) != 1 {
            0
        } else {
            self.character.eval(n)
        }
    }

    fn expect_weight(&self, weight_twice: u32) -> Result<()> {
        if self.weight_twice == weight_twice {
            Ok(())
        } else {
            Err(Error::WrongWeight {
                expected: weight_twice,
                got: self.weight_twice,
            })
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn signed(c: &BigInt, s: i64) -> BigInt {
    match s {
        0 => BigInt::zero(),
        1 => c.clone(),
        -1 => -c,
        _ => c * s,
    }
}

/// `T_p` in weight 2: `a(pn) + χ(p)·p·a(n/p)`. The output is truncated at
/// `⌊trunc/p⌋`.
pub fn hecke_tp_weight2(f: &QSeries, ctx: &FormContext, p: u64) -> Result<QSeries> {
    ctx.expect_weight(4)?;
    check_prime(p)?;
    let p = p as usize;
    let out_trunc = f.trunc() / p;
    if out_trunc == 0 {
        return Err(Error::InsufficientTruncation { have: f.trunc() });
    }
    let second = ctx.chi(p as i64) as i64 * p as i64;
    let coeffs = (0..=out_trunc)
        .map(|n| {
            let mut c = f.coeff(p * n).clone();
            if n % p == 0 && second != 0 {
                c += signed(f.coeff(n / p), second);
            }
            c
        })
        .collect();
    Ok(QSeries::from_coeffs(coeffs))
}

/// `T_{p²}` in weight 3/2:
/// `a(p²n) + χ(p)·(−n/p)·a(n) + χ(p)²·p·a(n/p²)`, truncated at `⌊trunc/p²⌋`.
pub fn hecke_tp2_half(f: &QSeries, ctx: &FormContext, p: u64) -> Result<QSeries> {
    ctx.expect_weight(3)?;
    check_prime(p)?;
    if (2 * ctx.level) % p == 0 {
        return Err(Error::PrimeDividesLevel {
            p,
            modulus: 2 * ctx.level,
        });
    }
    let pp = (p * p) as usize;
    let out_trunc = f.trunc() / pp;
    if out_trunc == 0 {
        return Err(Error::InsufficientTruncation { have: f.trunc() });
    }
    let chi_p = ctx.chi(p as i64) as i64;
    let coeffs = (0..=out_trunc)
        .map(|n| {
            let mut c = f.coeff(pp * n).clone();
            let middle = chi_p * kronecker(-(n as i64), p as i64) as i64;
            if middle != 0 {
                c += signed(f.coeff(n), middle);
            }
            if n % pp == 0 {
                c += signed(f.coeff(n / pp), chi_p * chi_p * p as i64);
            }
            c
        })
        .collect();
    Ok(QSeries::from_coeffs(coeffs))
}

/// The Shimura lift `S_t` from weight 3/2 to weight 2:
/// `Σ_{d|n} χ(d)·(−t/d)·a(t(n/d)²)`. Output truncation is `⌊√(trunc/t)⌋`.
/// Inputs are cusp forms; the constant term of the lift is left at zero.
pub fn shimura_lift(f: &QSeries, t: u64, ctx: &FormContext) -> Result<QSeries> {
    ctx.expect_weight(3)?;
    if t == 0 || !is_squarefree(t as i64) {
        return Err(Error::NotSquarefree(t as i64));
    }
    let out_trunc = (f.trunc() as u64 / t).sqrt() as usize;
    if out_trunc == 0 {
        return Err(Error::InsufficientTruncation { have: f.trunc() });
    }
    let t_us = t as usize;
    let mut coeffs = vec![BigInt::zero(); out_trunc + 1];
    for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let mut acc = BigInt::zero();
        for d in (1..=n).filter(|d| n % d == 0) {
            let s = ctx.chi(d as i64) as i64 * kronecker(-(t as i64), d as i64) as i64;
            if s != 0 {
                let m = n / d;
                acc += signed(f.coeff(t_us * m * m), s);
            }
        }
        *slot = acc;
    }
    Ok(QSeries::from_coeffs(coeffs))
}

/// `[SL₂(Z) : Γ₀(N)] = N·∏_{p|N} (1 + 1/p)`.
pub fn gamma0_index(level: u64) -> u64 {
    factor(level)
        .into_iter()
        .fold(level, |acc, (p, _)| acc / p * (p + 1))
}

/// `⌈(k/12)·[SL₂(Z) : Γ₀(N)]⌉`: agreement of two forms in the space up to
/// this coefficient forces equality.
pub fn sturm_bound(ctx: &FormContext) -> u64 {
    (ctx.weight_twice as u64 * gamma0_index(ctx.level)).div_ceil(24)
}

/// Whether `f` and `g` agree on `q⁰ … q^bound`.
pub fn equal_upto(f: &QSeries, g: &QSeries, bound: usize) -> Result<bool> {
    let have = f.trunc().min(g.trunc());
    if have < bound {
        return Err(Error::ComparisonBeyondTruncation { bound, have });
    }
    Ok((0..=bound).all(|n| f.coeff(n) == g.coeff(n)))
}
