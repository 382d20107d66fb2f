//! Exact arithmetic on `E: Y² = X³ − 432` over `Q(√d)` and on its quadratic
//! twists `E_d: dY² = X³ − 432` over `Q`.
//!
//! The projective Fermat cubic `x³ + y³ = z³` maps to `E` by
//! `X = 12z/(x+y)`, `Y = 36(y−x)/(x+y)`. A point `P ∈ E(K)` gives the
//! σ-anti-invariant point `P − σ(P) = (a, b√d)`, i.e. `(a, b) ∈ E_d(Q)`.
//! Nothing in this module uses floating point.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{is_squarefree, Rational};
use crate::error::{Error, Result};

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn is_square_int(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    Some(Rational::new(
        is_square_int(q.numer())?,
        is_square_int(q.denom())?,
    ))
}

/// `a + b√d` with `a, b ∈ Q`. For `d = 1` the radical is folded into `a`,
/// so the type degenerates to `Q` itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadFieldElem {
    a: Rational,
    b: Rational,
    d: i64,
}

impl QuadFieldElem {
    pub fn new(a: Rational, b: Rational, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Zero);
        }
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        Ok(Self::raw(a, b, d))
    }

    fn raw(a: Rational, b: Rational, d: i64) -> Self {
        if d == 1 {
            QuadFieldElem {
                a: a + b,
                b: Rational::zero(),
                d,
            }
        } else {
            QuadFieldElem { a, b, d }
        }
    }

    pub fn from_ints(a: i64, b: i64, d: i64) -> Result<Self> {
        Self::new(rat(a), rat(b), d)
    }

    pub fn from_rational(a: Rational, d: i64) -> Result<Self> {
        Self::new(a, Rational::zero(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    fn lift(&self, a: Rational) -> Self {
        Self::raw(a, Rational::zero(), self.d)
    }

    fn int(&self, n: i64) -> Self {
        self.lift(rat(n))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The Galois conjugate `a − b√d`.
    pub fn conj(&self) -> Self {
        Self::raw(self.a.clone(), -&self.b, self.d)
    }

    /// `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - rat(self.d) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::raw(&self.a / &n, -&self.b / &n, self.d))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn cube(&self) -> Self {
        self * &(self * self)
    }

    fn same_field(&self, rhs: &Self) {
        assert_eq!(
            self.d, rhs.d,
            "arithmetic between Q(√{}) and Q(√{})",
            self.d, rhs.d
        );
    }
}

impl fmt::Display for QuadFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√{}", self.b, self.d),
            (false, false) if self.b.is_negative() => {
                write!(f, "{} - {}√{}", self.a, -&self.b, self.d)
            }
            (false, false) => write!(f, "{} + {}√{}", self.a, self.b, self.d),
        }
    }
}

impl Add for &QuadFieldElem {
    type Output = QuadFieldElem;
    fn add(self, rhs: &QuadFieldElem) -> QuadFieldElem {
        self.same_field(rhs);
        QuadFieldElem::raw(&self.a + &rhs.a, &self.b + &rhs.b, self.d)
    }
}

impl Sub for &QuadFieldElem {
    type Output = QuadFieldElem;
    fn sub(self, rhs: &QuadFieldElem) -> QuadFieldElem {
        self.same_field(rhs);
        QuadFieldElem::raw(&self.a - &rhs.a, &self.b - &rhs.b, self.d)
    }
}

impl Mul for &QuadFieldElem {
    type Output = QuadFieldElem;
    fn mul(self, rhs: &QuadFieldElem) -> QuadFieldElem {
        self.same_field(rhs);
        let d = rat(self.d);
        QuadFieldElem::raw(
            &self.a * &rhs.a + d * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
            self.d,
        )
    }
}

/// Panics on division by zero; use [`QuadFieldElem::checked_div`] otherwise.
impl Div for &QuadFieldElem {
    type Output = QuadFieldElem;
    fn div(self, rhs: &QuadFieldElem) -> QuadFieldElem {
        self.checked_div(rhs).expect("division by zero in Q(√d)")
    }
}

impl Neg for &QuadFieldElem {
    type Output = QuadFieldElem;
    fn neg(self) -> QuadFieldElem {
        QuadFieldElem::raw(-&self.a, -&self.b, self.d)
    }
}

/// A point of `E: Y² = X³ − 432` over `Q(√d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine { x: QuadFieldElem, y: QuadFieldElem },
}

impl CurvePoint {
    pub fn new(x: QuadFieldElem, y: QuadFieldElem) -> Result<Self> {
        if x.d() != y.d() {
            return Err(Error::FieldMismatch(x.d(), y.d()));
        }
        let p = CurvePoint::Affine { x, y };
        if !p.is_on_curve() {
            return Err(Error::InvalidArgument("point is not on Y² = X³ − 432".into()));
        }
        Ok(p)
    }

    pub fn is_on_curve(&self) -> bool {
        match self {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => y * y == &x.cube() - &x.int(432),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y,
            },
        }
    }

    /// `σ(P)`, conjugating both coordinates.
    pub fn conj(&self) -> Self {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.conj(),
                y: y.conj(),
            },
        }
    }

    pub fn multiple(&self, n: u64) -> Self {
        let mut acc = CurvePoint::Infinity;
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = add_points(&acc, &base);
            }
            base = add_points(&base, &base);
            n >>= 1;
        }
        acc
    }
}

/// Chord-and-tangent addition on `Y² = X³ − 432`.
pub fn add_points(p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
    let (x1, y1, x2, y2) = match (p, q) {
        (CurvePoint::Infinity, _) => return q.clone(),
        (_, CurvePoint::Infinity) => return p.clone(),
        (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
            (x1, y1, x2, y2)
        }
    };
    let slope = if x1 == x2 {
        if (y1 + y2).is_zero() {
            return CurvePoint::Infinity;
        }
        &(&x1.int(3) * &(x1 * x1)) / &(&x1.int(2) * y1)
    } else {
        &(y2 - y1) / &(x2 - x1)
    };
    let x3 = &(&(&slope * &slope) - x1) - x2;
    let y3 = &(&slope * &(x1 - &x3)) - y1;
    CurvePoint::Affine { x: x3, y: y3 }
}

/// A point of `E_d(Q)`, `dY² = X³ − 432`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistPoint {
    Infinity,
    Affine { a: Rational, b: Rational },
}

pub fn on_twist(d: i64, a: &Rational, b: &Rational) -> bool {
    rat(d) * b * b == a * a * a - rat(432)
}

/// A candidate triple `(x, y, z)` in `Q(√d)³`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermatSolution {
    pub x: QuadFieldElem,
    pub y: QuadFieldElem,
    pub z: QuadFieldElem,
}

impl FermatSolution {
    pub fn new(x: QuadFieldElem, y: QuadFieldElem, z: QuadFieldElem) -> Result<Self> {
        for other in [&y, &z] {
            if other.d() != x.d() {
                return Err(Error::FieldMismatch(x.d(), other.d()));
            }
        }
        Ok(FermatSolution { x, y, z })
    }

    pub fn d(&self) -> i64 {
        self.x.d()
    }

    pub fn satisfies_equation(&self) -> bool {
        &self.x.cube() + &self.y.cube() == self.z.cube()
    }

    pub fn is_nontrivial(&self) -> bool {
        !(self.x.is_zero() || self.y.is_zero() || self.z.is_zero())
    }

    pub fn scale(&self, c: &QuadFieldElem) -> Self {
        FermatSolution {
            x: &self.x * c,
            y: &self.y * c,
            z: &self.z * c,
        }
    }

    fn components(&self) -> [&Rational; 6] {
        [
            &self.z.a, &self.z.b, &self.x.a, &self.x.b, &self.y.a, &self.y.b,
        ]
    }

    /// Rational rescaling with coprime integer components and the first
    /// nonzero of `(z.a, z.b, x.a, x.b, y.a, y.b)` positive.
    pub fn canonical(&self) -> Self {
        let comps = self.components();
        let den = comps.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = comps
            .iter()
            .map(|c| (*c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = nums.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if g.is_zero() {
            return self.clone();
        }
        let sign = if nums.iter().find(|n| !n.is_zero()).is_some_and(|n| n.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let factor = Rational::new(den * sign, g);
        self.scale(&self.x.lift(factor))
    }

    /// Equality as points of the projective plane over `Q(√d)`.
    pub fn same_projective_point(&self, other: &Self) -> bool {
        if self.d() != other.d() {
            return false;
        }
        let (a, b) = ([&self.x, &self.y, &self.z], [&other.x, &other.y, &other.z]);
        let zero_pattern = |v: [&QuadFieldElem; 3]| v.map(|c| c.is_zero());
        if zero_pattern(a) != zero_pattern(b) || a.iter().all(|c| c.is_zero()) {
            return false;
        }
        (0..3).all(|i| (0..3).all(|j| a[i] * b[j] == a[j] * b[i]))
    }

    pub fn to_json(&self) -> Value {
        let elem = |e: &QuadFieldElem| {
            json!([
                int_json(e.a.numer()),
                int_json(e.a.denom()),
                int_json(e.b.numer()),
                int_json(e.b.denom())
            ])
        };
        json!({ "d": self.d(), "x": elem(&self.x), "y": elem(&self.y), "z": elem(&self.z) })
    }
}

impl fmt::Display for FermatSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})³ + ({})³ = ({})³", self.x, self.y, self.z)
    }
}

/// Machine integers stay JSON numbers; anything larger becomes a decimal string.
pub fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// `x³ + y³ = z³` holds exactly and no coordinate vanishes.
pub fn verify_solution(s: &FermatSolution) -> bool {
    s.satisfies_equation() && s.is_nontrivial()
}

/// `(x : y : z) ↦ (12z/(x+y), 36(y−x)/(x+y))`; `x + y = 0` maps to infinity.
pub fn fermat_to_curve(s: &FermatSolution) -> CurvePoint {
    let sum = &s.x + &s.y;
    if sum.is_zero() {
        return CurvePoint::Infinity;
    }
    CurvePoint::Affine {
        x: &(&s.z * &sum.int(12)) / &sum,
        y: &(&(&s.y - &s.x) * &sum.int(36)) / &sum,
    }
}

/// `P − σ(P) = (a, b√d)`, read as `(a, b) ∈ E_d(Q)`.
pub fn twist_descent(p: &CurvePoint) -> TwistPoint {
    match add_points(p, &p.conj().neg()) {
        CurvePoint::Infinity => TwistPoint::Infinity,
        CurvePoint::Affine { x, y } => {
            debug_assert!(x.is_rational() && y.a().is_zero());
            TwistPoint::Affine {
                a: x.a().clone(),
                b: y.b().clone(),
            }
        }
    }
}

/// Inverse of [`fermat_to_curve`] applied to `(a, b√d)`, normalized to `z = 1`:
/// `x = (12/a − b√d/(3a))/2`, `y = (12/a + b√d/(3a))/2`.
pub fn twist_to_fermat(a: &Rational, b: &Rational, d: i64) -> Result<FermatSolution> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !on_twist(d, a, b) {
        return Err(Error::InvalidArgument(format!(
            "({a}, {b}) is not on {d}Y² = X³ − 432"
        )));
    }
    let u = rat(12) / a;
    let v = b / (rat(3) * a);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let x = QuadFieldElem::new(&u * &half, -&v * &half, d)?;
    let y = QuadFieldElem::new(&u * &half, &v * &half, d)?;
    let z = QuadFieldElem::from_ints(1, 0, d)?;
    FermatSolution::new(x, y, z)
}

/// `ψ₃ = 3x⁴ + 6Ax² + 12Bx − A²` for `y² = x³ + Ax + B`, as coefficients
/// of `x⁰ … x⁴`.
pub fn three_division_polynomial(a: &BigInt, b: &BigInt) -> [BigInt; 5] {
    [
        -(a * a),
        b * 12,
        a * 6,
        BigInt::zero(),
        BigInt::from(3),
    ]
}

fn eval_poly(coeffs: &[BigInt], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
}

/// Rational roots of `ψ₃` for a model with `A = 0`, where
/// `ψ₃ = 3x(x³ + 4B)`: zero and the rational cube root of `−4B`, if any.
fn rational_roots_j0(psi: &[BigInt; 5]) -> Vec<Rational> {
    debug_assert!(psi[0].is_zero() && psi[2].is_zero());
    let mut roots = vec![Rational::zero()];
    let target: BigInt = -&psi[1] / 3;
    let c = target.cbrt();
    if &c * &c * &c == target && !c.is_zero() {
        roots.push(Rational::from_integer(c));
    }
    roots.retain(|r| eval_poly(psi, r).is_zero());
    roots
}

/// Order of `E_d(Q)_tors`, which is 1 or 3 here. Found by looking for a
/// rational point above a rational root of the 3-division polynomial of the
/// integral model `y² = x³ − 432d³`.
pub fn torsion_order(d: i64) -> Result<u8> {
    if d == 0 {
        return Err(Error::Zero);
    }
    if !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    let b = BigInt::from(-432) * BigInt::from(d).pow(3);
    let psi = three_division_polynomial(&BigInt::zero(), &b);
    for x in rational_roots_j0(&psi) {
        let y2 = &x * &x * &x + Rational::from_integer(b.clone());
        if y2.is_positive() && rational_sqrt(&y2).is_some() {
            return Ok(3);
        }
    }
    Ok(1)
}

/// A Burnside parameter `k = p/q` and the solution it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideWitness {
    pub k: Rational,
    pub solution: FermatSolution,
}

impl BurnsideWitness {
    pub fn to_json(&self) -> Value {
        let mut v = self.solution.to_json();
        v["k"] = json!([int_json(self.k.numer()), int_json(self.k.denom())]);
        v
    }
}

/// Parameters `k = p/q` in search order: increasing height `max(|p|, q)`,
/// then `p`, then `q`; reduced, with `k ∉ {0, −1}`.
fn burnside_parameters(height: u64) -> impl Iterator<Item = (i64, i64)> {
    let h = height as i64;
    (1..=h).flat_map(|ht| {
        (-ht..=ht).flat_map(move |p| {
            (1..=ht).filter_map(move |q| {
                let ok = p.abs().max(q) == ht && p != 0 && p != -q && p.gcd(&q) == 1;
                ok.then_some((p, q))
            })
        })
    })
}

/// Searches `k = p/q` of height at most `height` for which `−3(1 + 4k³)/d` is
/// a rational square `r²`, returning the first solution
/// `(−3 + r√d, −3 − r√d, 6k)` in canonical form. `None` is not a proof of
/// absence.
pub fn burnside_search(d: i64, height: u64) -> Result<Option<BurnsideWitness>> {
    if d == 0 {
        return Err(Error::Zero);
    }
    if !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    if d == 1 {
        return Err(Error::SquareField(1));
    }
    if height == 0 {
        return Err(Error::InvalidArgument("height must be at least 1".into()));
    }
    let bd = BigInt::from(d);
    for (p, q) in burnside_parameters(height) {
        let (bp, bq) = (BigInt::from(p), BigInt::from(q));
        // r² = −3(q³ + 4p³)/(d·q³)  ⇔  (r·q²·d)² = −3·d·q·(q³ + 4p³)
        let m2 = BigInt::from(-3) * &bd * &bq * (bq.pow(3) + 4 * bp.pow(3));
        let Some(m) = is_square_int(&m2) else {
            continue;
        };
        let r = Rational::new(m, bq.pow(2) * &bd);
        let k = Rational::new(bp, bq);
        let build = |r: &Rational| -> Result<FermatSolution> {
            let x = QuadFieldElem::new(rat(-3), r.clone(), d)?;
            let y = QuadFieldElem::new(rat(-3), -r, d)?;
            let z = QuadFieldElem::from_rational(&k * rat(6), d)?;
            Ok(FermatSolution::new(x, y, z)?.canonical())
        };
        let mut solution = build(&r)?;
        if solution.x.b().is_negative() {
            solution = build(&-r)?;
        }
        if !verify_solution(&solution) {
            return Err(Error::InvalidArgument(format!(
                "Burnside parameter k = {k} produced an invalid triple {solution}"
            )));
        }
        return Ok(Some(BurnsideWitness { k, solution }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, dn: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(dn))
    }

    fn e(a: i64, b: i64, d: i64) -> QuadFieldElem {
        QuadFieldElem::from_ints(a, b, d).unwrap()
    }

    fn sol(x: QuadFieldElem, y: QuadFieldElem, z: QuadFieldElem) -> FermatSolution {
        FermatSolution::new(x, y, z).unwrap()
    }

    fn pt(x: QuadFieldElem, y: QuadFieldElem) -> CurvePoint {
        CurvePoint::new(x, y).unwrap()
    }

    fn known_d2() -> FermatSolution {
        sol(e(18, 17, 2), e(18, -17, 2), e(42, 0, 2))
    }

    #[test]
    fn field_arithmetic() {
        let x = e(3, 2, 2);
        let y = e(-1, 5, 2);
        assert_eq!(&x * &y, e(-3 + 20, 15 - 2, 2));
        assert_eq!(&(&x / &y) * &y, x);
        assert_eq!(x.norm(), rat(1));
        assert!(e(0, 0, 2).inv().is_err());
        assert_eq!(e(3, 2, 1), e(5, 0, 1));
        assert!(QuadFieldElem::from_ints(1, 1, 8).is_err());
        assert_eq!(format!("{}", e(3, -2, 5)), "3 - 2√5");
    }

    #[test]
    fn verify_examples() {
        assert!(verify_solution(&known_d2()));
        assert!(!verify_solution(&sol(e(1, 0, 2), e(0, 0, 2), e(1, 0, 2))));
        assert!(!verify_solution(&sol(e(1, 0, 7), e(1, 0, 7), e(1, 0, 7))));
        assert!(FermatSolution::new(e(1, 0, 2), e(1, 0, 3), e(1, 0, 2)).is_err());
    }

    #[test]
    fn verification_is_scale_invariant() {
        let s = known_d2();
        for c in [e(3, 0, 2), e(-1, 0, 2), e(2, 7, 2), e(0, 1, 2)] {
            let t = s.scale(&c);
            assert!(verify_solution(&t));
            assert!(t.same_projective_point(&s));
        }
        let c = QuadFieldElem::from_rational(q(-5, 7), 2).unwrap();
        assert_eq!(s.scale(&c).canonical(), s.canonical());
    }

    #[test]
    fn fermat_to_curve_examples() {
        let d = 5;
        let p = fermat_to_curve(&sol(e(1, 0, d), e(0, 0, d), e(1, 0, d)));
        assert_eq!(p, pt(e(12, 0, d), e(-36, 0, d)));
        let p = fermat_to_curve(&sol(e(0, 0, d), e(1, 0, d), e(1, 0, d)));
        assert_eq!(p, pt(e(12, 0, d), e(36, 0, d)));
        let p = fermat_to_curve(&known_d2());
        assert_eq!(p, pt(e(14, 0, 2), e(0, -34, 2)));
        assert!(p.is_on_curve());
        let p = fermat_to_curve(&sol(e(1, 0, d), e(-1, 0, d), e(0, 0, d)));
        assert_eq!(p, CurvePoint::Infinity);
    }

    #[test]
    fn group_law_examples() {
        let d = 2;
        let t = pt(e(12, 0, d), e(36, 0, d));
        let tm = pt(e(12, 0, d), e(-36, 0, d));
        assert_eq!(add_points(&t, &CurvePoint::Infinity), t);
        assert_eq!(add_points(&CurvePoint::Infinity, &t), t);
        assert_eq!(add_points(&t, &tm), CurvePoint::Infinity);
        assert_eq!(add_points(&t, &t), tm);
        assert_eq!(t.multiple(3), CurvePoint::Infinity);
    }

    #[test]
    fn group_law_is_associative_over_q_sqrt2() {
        let t = pt(e(12, 0, 2), e(36, 0, 2));
        let p = fermat_to_curve(&known_d2());
        let hit = burnside_search(2, 10).unwrap().unwrap();
        let h = fermat_to_curve(&hit.solution);
        let pool = [
            t.clone(),
            t.neg(),
            p.clone(),
            p.conj(),
            h.clone(),
            add_points(&p, &t),
            add_points(&h, &t.neg()),
            CurvePoint::Infinity,
        ];
        let mut checked = 0;
        for (i, a) in pool.iter().enumerate() {
            for (j, b) in pool.iter().enumerate() {
                let c = &pool[(i * 3 + j * 5) % pool.len()];
                let left = add_points(&add_points(a, b), c);
                let right = add_points(a, &add_points(b, c));
                assert_eq!(left, right, "i={i} j={j}");
                assert!(left.is_on_curve());
                checked += 1;
            }
        }
        assert!(checked >= 20);
    }

    #[test]
    fn descent_examples() {
        let rational = pt(e(12, 0, 3), e(36, 0, 3));
        assert_eq!(twist_descent(&rational), TwistPoint::Infinity);
        let p = fermat_to_curve(&known_d2());
        let TwistPoint::Affine { a, b } = twist_descent(&p) else {
            panic!("descent of a non-rational point vanished");
        };
        assert!(on_twist(2, &a, &b));
        let qpt = add_points(&p, &p.conj().neg());
        assert_eq!(qpt.conj(), qpt.neg());
    }

    #[test]
    fn twist_to_fermat_examples() {
        let s = twist_to_fermat(&rat(12), &rat(-36), 1).unwrap();
        assert!(s.same_projective_point(&sol(e(1, 0, 1), e(0, 0, 1), e(1, 0, 1))));
        assert!(!s.is_nontrivial());
        assert_eq!(twist_to_fermat(&rat(0), &rat(0), 2), Err(Error::DivisionByZero));
        assert!(twist_to_fermat(&rat(1), &rat(1), 2).is_err());
    }

    #[test]
    fn twist_round_trip() {
        let p = fermat_to_curve(&known_d2());
        let TwistPoint::Affine { a, b } = twist_descent(&p) else { unreachable!() };
        let s = twist_to_fermat(&a, &b, 2).unwrap();
        assert!(verify_solution(&s));
        let back = fermat_to_curve(&s);
        assert_eq!(back, pt(QuadFieldElem::from_rational(a.clone(), 2).unwrap(),
                            QuadFieldElem::new(rat(0), b.clone(), 2).unwrap()));
        // (a, b√d) − σ(a, b√d) = 2·(a, b√d)
        let doubled = add_points(&back, &back);
        let CurvePoint::Affine { x, y } = doubled else { unreachable!() };
        assert_eq!(twist_descent(&back), TwistPoint::Affine { a: x.a().clone(), b: y.b().clone() });
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(torsion_order(1).unwrap(), 3);
        assert_eq!(torsion_order(-3).unwrap(), 3);
        assert_eq!(torsion_order(2).unwrap(), 1);
        assert_eq!(torsion_order(-1).unwrap(), 1);
        assert!(torsion_order(4).is_err());
        assert!(torsion_order(0).is_err());
    }

    #[test]
    fn torsion_points_have_order_three() {
        // x = 0, y = 108 on y² = x³ + 11664 (d = −3) ↦ (0, 12√−3) on E.
        let p = pt(e(0, 0, -3), e(0, 12, -3));
        assert_eq!(p.multiple(3), CurvePoint::Infinity);
        assert_ne!(p.multiple(1), CurvePoint::Infinity);
        let psi = three_division_polynomial(&BigInt::zero(), &BigInt::from(-432 * -27));
        assert_eq!(rational_roots_j0(&psi), vec![Rational::zero(), rat(-36)]);
        let psi1 = three_division_polynomial(&BigInt::zero(), &BigInt::from(-432));
        assert_eq!(rational_roots_j0(&psi1), vec![Rational::zero(), rat(12)]);
    }

    #[test]
    fn burnside_d2() {
        let w = burnside_search(2, 10).unwrap().expect("d = 2 has a small witness");
        assert_eq!(w.k, q(-7, 6));
        assert!(verify_solution(&w.solution));
        assert!(w.solution.same_projective_point(&known_d2()));
        assert_eq!(w.solution, known_d2());
    }

    #[test]
    fn burnside_search_respects_order_and_inputs() {
        let ks: Vec<_> = burnside_parameters(2).collect();
        assert_eq!(ks, vec![(1, 1), (-2, 1), (-1, 2), (1, 2), (2, 1)]);
        assert!(burnside_search(1, 5).is_err());
        assert!(burnside_search(8, 5).is_err());
        assert!(burnside_search(2, 0).is_err());
        assert_eq!(burnside_search(-1, 50).unwrap(), None);
    }

    #[test]
    fn solution_json_shape() {
        let w = burnside_search(2, 10).unwrap().unwrap();
        let v = w.to_json();
        assert_eq!(v["d"], 2);
        assert_eq!(v["x"], json!([18, 1, 17, 1]));
        assert_eq!(v["y"], json!([18, 1, -17, 1]));
        assert_eq!(v["z"], json!([42, 1, 0, 1]));
        assert_eq!(v["k"], json!([-7, 6]));
    }
}
