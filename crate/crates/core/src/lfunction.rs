//! Central values `L(E_d, 1)` of the quadratic twists of the conductor-27
//! curve, via the rapidly convergent series
//! `L(E, 1) = 2 Σ aₙ/n · exp(−2πn/√N)`, valid when the root number is `+1`.

use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::{fundamental_discriminant, is_squarefree, QuadChar};
use crate::error::{Error, Result};
use crate::qseries::build_f;

const TAIL_TARGET: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LReport {
    pub d: i64,
    pub d_reduced: i64,
    pub conductor: u64,
    pub root_number: i8,
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: usize,
}

fn check_twist(d: i64) -> Result<()> {
    if d == 0 {
        return Err(Error::Zero);
    }
    if !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    Ok(())
}

fn check_reduced(d: i64) -> Result<()> {
    check_twist(d)?;
    if d % 3 == 0 {
        return Err(Error::DivisibleByThree(d));
    }
    Ok(())
}

/// `E_{−9m} ≅ E_{−m}`, so `d = 3m` may be replaced by `−m`.
pub fn reduce_twist(d: i64) -> Result<i64> {
    check_twist(d)?;
    Ok(if d % 3 == 0 { -d / 3 } else { d })
}

/// `w(E_d) = χ_d(−27)`.
pub fn root_number(d: i64) -> Result<i8> {
    check_reduced(d)?;
    Ok(QuadChar::of_field(d)?.eval(-27))
}

/// `27·D²` with `D` the discriminant of `Q(√d)`.
pub fn conductor(d: i64) -> Result<u64> {
    check_reduced(d)?;
    let disc = fundamental_discriminant(d)?.unsigned_abs();
    Ok(27 * disc * disc)
}

static LAMBDA: Mutex<Option<Arc<Vec<i64>>>> = Mutex::new(None);

/// `λ(0..=n)` from the eta product, cached and grown geometrically.
pub fn lambda_table(n: usize) -> Arc<Vec<i64>> {
    let mut guard = LAMBDA.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = guard.as_ref() {
        if t.len() > n {
            return Arc::clone(t);
        }
    }
    let have = guard.as_ref().map_or(0, |t| t.len());
    let len = (n + 1).max(2 * have).max(1024);
    let f = build_f(len);
    let table: Vec<i64> = f
        .coeffs()
        .iter()
        .map(|c| c.to_i64().expect("eta coefficient fits in i64"))
        .collect();
    let table = Arc::new(table);
    *guard = Some(Arc::clone(&table));
    table
}

/// `aₙ(E_d) = λ(n)·χ_d(n)` for `n = 0..=len` (index 0 holds 0).
pub fn twisted_an(d: i64, len: usize) -> Result<Vec<i64>> {
    check_reduced(d)?;
    let chi = QuadChar::of_field(d)?;
    let period = chi.period_table();
    let lambda = lambda_table(len);
    Ok((0..=len)
        .map(|n| lambda[n] * i64::from(period[n % period.len()]))
        .collect())
}

/// `2√3·Σ_{n>M} rⁿ` with `r = exp(−2π/√N)`, bounding the discarded terms by
/// `|aₙ| ≤ d(n)√n ≤ √3·n`.
pub fn tail_bound(conductor: u64, terms: usize) -> f64 {
    let r = (-2.0 * PI / (conductor as f64).sqrt()).exp();
    2.0 * 3f64.sqrt() * r.powf(terms as f64 + 1.0) / (1.0 - r)
}

pub fn default_depth(conductor: u64) -> usize {
    (12.0 * (conductor as f64).sqrt()).ceil() as usize
}

pub fn central_value(d: i64) -> Result<LReport> {
    let dr = reduce_twist(d)?;
    central_value_with_depth(d, default_depth(conductor(dr)?))
}

/// As [`central_value`] with an explicit starting depth; the depth is raised
/// until the tail bound drops below `1e-6`.
pub fn central_value_with_depth(d: i64, depth: usize) -> Result<LReport> {
    let dr = reduce_twist(d)?;
    let n = conductor(dr)?;
    let w = root_number(dr)?;
    let mut m = depth.max(1);
    while tail_bound(n, m) >= TAIL_TARGET {
        m *= 2;
    }
    let tail = tail_bound(n, m);
    let value = if w == -1 {
        0.0
    } else {
        let an = twisted_an(dr, m)?;
        let step = -2.0 * PI / (n as f64).sqrt();
        2.0 * an
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &a)| a != 0)
            .map(|(k, &a)| a as f64 / k as f64 * (step * k as f64).exp())
            .sum::<f64>()
    };
    Ok(LReport {
        d,
        d_reduced: dr,
        conductor: n,
        root_number: w,
        value,
        tail_bound: tail,
        terms_used: m,
    })
}
