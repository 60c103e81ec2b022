//! The Picard lattice of the blow-up `X^n_r` of projective space at `r` points.
//!
//! Divisor classes are written `dH - m_1 E_1 - ... - m_r E_r` and store the
//! multiplicities `m_i` directly. Curve classes live in the dual basis
//! `h, e_1, ..., e_r` and are written `δh - μ_1 e_1 - ... - μ_r e_r`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, q, qint, rational_sqrt, to_i64, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlowupContext {
    n: u32,
    r: usize,
}

impl BlowupContext {
    pub fn new(n: u32, r: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidContext(format!("ambient dimension n = {n} < 2")));
        }
        Ok(Self { n, r })
    }

    /// Shorthand for `X^2_r`.
    pub fn surface(r: usize) -> Self {
        Self { n: 2, r }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_surface(&self) -> bool {
        self.n == 2
    }

    pub(crate) fn require_surface(&self) -> Result<()> {
        if self.is_surface() {
            Ok(())
        } else {
            Err(Error::NotSurface(self.n))
        }
    }

    pub(crate) fn require_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch(*self, *other))
        }
    }
}

impl fmt::Display for BlowupContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^{}_{}", self.n, self.r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    ctx: BlowupContext,
    d: Q,
    m: Vec<Q>,
}

impl DivisorClass {
    pub fn new(ctx: BlowupContext, d: Q, m: Vec<Q>) -> Result<Self> {
        if m.len() != ctx.r {
            return Err(Error::InvalidContext(format!(
                "{} multiplicities given for r = {}",
                m.len(),
                ctx.r
            )));
        }
        Ok(Self { ctx, d, m })
    }

    /// Panics if `m.len() != ctx.r()`.
    pub fn from_ints(ctx: BlowupContext, d: i64, m: &[i64]) -> Self {
        Self::new(ctx, q(d), m.iter().map(|&x| q(x)).collect()).expect("length matches r")
    }

    pub fn zero(ctx: BlowupContext) -> Self {
        Self { ctx, d: Q::zero(), m: vec![Q::zero(); ctx.r] }
    }

    pub fn hyperplane(ctx: BlowupContext) -> Self {
        Self { ctx, d: Q::one(), m: vec![Q::zero(); ctx.r] }
    }

    /// `E_{i+1}` (0-based index).
    pub fn exceptional(ctx: BlowupContext, i: usize) -> Self {
        let mut c = Self::zero(ctx);
        c.m[i] = -Q::one();
        c
    }

    /// `dH - m Σ_{i<k} E_i`.
    pub fn uniform(ctx: BlowupContext, d: i64, mult: i64, k: usize) -> Self {
        let m = (0..ctx.r).map(|i| if i < k { q(mult) } else { Q::zero() }).collect();
        Self { ctx, d: q(d), m }
    }

    pub fn ctx(&self) -> BlowupContext {
        self.ctx
    }

    pub fn degree(&self) -> &Q {
        &self.d
    }

    pub fn multiplicities(&self) -> &[Q] {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero() && self.m.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.d.is_integer() && self.m.iter().all(Q::is_integer)
    }

    /// Coefficients as `i64` (`[d, m_1, ..., m_r]`), if integral and in range.
    pub fn to_i64s(&self) -> Result<Vec<i64>> {
        std::iter::once(&self.d)
            .chain(&self.m)
            .map(|x| to_i64(x).ok_or_else(|| Error::NonInteger(self.to_string())))
            .collect()
    }

    pub(crate) fn from_i64s(ctx: BlowupContext, v: &[i64]) -> Self {
        Self::from_ints(ctx, v[0], &v[1..])
    }

    /// Coordinates in the basis `H, E_1, ..., E_r`, i.e. `(d, -m_1, ..., -m_r)`.
    pub fn coefficients(&self) -> Vec<Q> {
        std::iter::once(self.d.clone()).chain(self.m.iter().map(|x| -x)).collect()
    }

    pub fn from_coefficients(ctx: BlowupContext, c: &[Q]) -> Result<Self> {
        if c.len() != ctx.r + 1 {
            return Err(Error::InvalidContext("coefficient vector has wrong length".into()));
        }
        Self::new(ctx, c[0].clone(), c[1..].iter().map(|x| -x).collect())
    }

    /// Smallest positive integer multiple, with the scale factor used.
    pub fn clear_denominators(&self) -> (BigInt, DivisorClass) {
        let l = crate::rational::lcm_of_denominators(std::iter::once(&self.d).chain(&self.m));
        let s = qint(&l);
        (l, self.scale(&s))
    }

    pub fn scale(&self, s: &Q) -> DivisorClass {
        Self { ctx: self.ctx, d: &self.d * s, m: self.m.iter().map(|x| x * s).collect() }
    }

    /// Intersection product on a surface: `d1 d2 - Σ m1_i m2_i`.
    pub fn pair(&self, other: &DivisorClass) -> Result<Q> {
        self.ctx.require_same(&other.ctx)?;
        self.ctx.require_surface()?;
        Ok(self.pair_unchecked(other))
    }

    pub(crate) fn pair_unchecked(&self, other: &DivisorClass) -> Q {
        let mut acc = &self.d * &other.d;
        for (a, b) in self.m.iter().zip(&other.m) {
            acc -= a * b;
        }
        acc
    }

    pub fn self_intersection(&self) -> Result<Q> {
        self.pair(self)
    }

    /// Pairing with a curve class, in any dimension: `d δ - Σ m_i μ_i`.
    pub fn pair_curve(&self, c: &CurveClass) -> Result<Q> {
        self.ctx.require_same(&c.ctx)?;
        let mut acc = &self.d * &c.delta;
        for (a, b) in self.m.iter().zip(&c.mu) {
            acc -= a * b;
        }
        Ok(acc)
    }

    /// `½(D² + D·K) + 1` on a surface.
    pub fn arithmetic_genus(&self) -> Result<Q> {
        self.ctx.require_surface()?;
        let k = canonical_class(self.ctx);
        Ok((self.pair_unchecked(self) + self.pair_unchecked(&k)) / q(2) + Q::one())
    }

    /// `C(d+n, n) - Σ C(m_i+n-1, n) - 1` for integer classes with `m_i >= 0`.
    pub fn vdim(&self) -> Result<Q> {
        if !self.is_integral() {
            return Err(Error::NonInteger(self.to_string()));
        }
        if self.m.iter().any(Signed::is_negative) {
            return Err(Error::NegativeMultiplicity);
        }
        let n = self.ctx.n as i64;
        let d = self.d.to_integer();
        let mut v = binomial(&(d + n), n);
        for mi in &self.m {
            v -= binomial(&(mi.to_integer() + (n - 1)), n);
        }
        Ok(qint(&(v - 1)))
    }

    /// `½(D² - D·K)`; accepts any rational class on a surface.
    pub fn vdim_surface(&self) -> Result<Q> {
        self.ctx.require_surface()?;
        let k = canonical_class(self.ctx);
        Ok((self.pair_unchecked(self) - self.pair_unchecked(&k)) / q(2))
    }

    /// `max(vdim, -1)`; surfaces fall back to the quadratic form when some `m_i < 0`.
    pub fn edim(&self) -> Result<Q> {
        let v = match self.vdim() {
            Err(Error::NegativeMultiplicity) if self.ctx.is_surface() => self.vdim_surface()?,
            other => other?,
        };
        Ok(v.max(-Q::one()))
    }

    /// `D² >= 0` and `D·H >= 0`.
    pub fn in_positive_cone(&self) -> Result<bool> {
        self.ctx.require_surface()?;
        Ok(!self.pair_unchecked(self).is_negative() && !self.d.is_negative())
    }

    /// Riemann–Roch effectivity: `χ(D) = vdim + 1 > 0` and `h²(D) = h⁰(K - D) = 0`.
    pub fn rr_effective(&self) -> Result<RrVerdict> {
        self.ctx.require_surface()?;
        if !self.is_integral() {
            return Ok(RrVerdict::NoCertificate);
        }
        // (K - D)·H = -3 - d
        let h2_vanishes = (q(-3) - &self.d).is_negative();
        let v = self.vdim_surface()?;
        Ok(if h2_vanishes && !v.is_negative() {
            RrVerdict::CertifiedEffective
        } else {
            RrVerdict::NoCertificate
        })
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.ctx.require_same(&other.ctx)?;
        Ok(self + other)
    }

    pub fn to_json(&self) -> ClassJson {
        ClassJson {
            n: self.ctx.n,
            r: self.ctx.r,
            d: RatJson::from(&self.d),
            m: self.m.iter().map(RatJson::from).collect(),
        }
    }

    pub fn from_json(j: &ClassJson) -> Result<Self> {
        let ctx = BlowupContext::new(j.n, j.r)?;
        let d = j.d.to_q()?;
        let m = j.m.iter().map(RatJson::to_q).collect::<Result<Vec<_>>>()?;
        Self::new(ctx, d, m)
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json()).expect("class json is always serializable")
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}H", format_q(&self.d))?;
        for (i, mi) in self.m.iter().enumerate() {
            write!(f, " - {} E{}", format_q(mi), i + 1)?;
        }
        Ok(())
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    /// Panics on context mismatch; use [`DivisorClass::checked_add`] for untrusted input.
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.ctx, rhs.ctx, "adding classes from different blow-ups");
        DivisorClass {
            ctx: self.ctx,
            d: &self.d + &rhs.d,
            m: self.m.iter().zip(&rhs.m).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass { ctx: self.ctx, d: -&self.d, m: self.m.iter().map(|x| -x).collect() }
    }
}

impl Mul<&DivisorClass> for &Q {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RrVerdict {
    CertifiedEffective,
    NoCertificate,
}

/// `K = -3H + ΣE_i` on a surface. For `n > 2` this returns the standard
/// `-(n+1)H + (n-1)ΣE_i`; nothing in the crate relies on the higher-dimensional form.
pub fn canonical_class(ctx: BlowupContext) -> DivisorClass {
    let n = ctx.n as i64;
    DivisorClass {
        ctx,
        d: q(-(n + 1)),
        m: vec![q(-(n - 1)); ctx.r],
    }
}

/// `-K_s` pulled back to `X^2_r`: `3H - Σ_{i<s} E_i`.
pub fn anticanonical_prefix(ctx: BlowupContext, s: usize) -> DivisorClass {
    DivisorClass::uniform(ctx, 3, 1, s.min(ctx.r))
}

/// `C(a, k)` with `C(a, k) = 0` for `a < k`.
pub fn binomial(a: &BigInt, k: i64) -> BigInt {
    if a < &BigInt::from(k) || k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= a - i;
        den *= i + 1;
    }
    num / den
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveClass {
    ctx: BlowupContext,
    delta: Q,
    mu: Vec<Q>,
}

impl CurveClass {
    pub fn new(ctx: BlowupContext, delta: Q, mu: Vec<Q>) -> Result<Self> {
        if mu.len() != ctx.r {
            return Err(Error::InvalidContext("curve class has wrong length".into()));
        }
        Ok(Self { ctx, delta, mu })
    }

    /// Panics if `mu.len() != ctx.r()`.
    pub fn from_ints(ctx: BlowupContext, delta: i64, mu: &[i64]) -> Self {
        Self::new(ctx, q(delta), mu.iter().map(|&x| q(x)).collect()).expect("length matches r")
    }

    pub fn line(ctx: BlowupContext) -> Self {
        Self { ctx, delta: Q::one(), mu: vec![Q::zero(); ctx.r] }
    }

    /// `e_{k+1}` (0-based).
    pub fn exceptional(ctx: BlowupContext, k: usize) -> Self {
        let mut c = Self { ctx, delta: Q::zero(), mu: vec![Q::zero(); ctx.r] };
        c.mu[k] = -Q::one();
        c
    }

    /// `h - e_{i+1} - e_{j+1}` (0-based); with `i == j` this is `h - e_{i+1}`.
    pub fn line_through(ctx: BlowupContext, idx: &[usize]) -> Self {
        let mut c = Self::line(ctx);
        for &i in idx {
            c.mu[i] = Q::one();
        }
        c
    }

    pub fn ctx(&self) -> BlowupContext {
        self.ctx
    }

    pub fn degree(&self) -> &Q {
        &self.delta
    }

    pub fn multiplicities(&self) -> &[Q] {
        &self.mu
    }

    /// On a surface curves and divisors share one lattice.
    pub fn to_divisor(&self) -> Result<DivisorClass> {
        self.ctx.require_surface()?;
        DivisorClass::new(self.ctx, self.delta.clone(), self.mu.clone())
    }

    pub fn from_divisor(d: &DivisorClass) -> Result<Self> {
        d.ctx.require_surface()?;
        Self::new(d.ctx, d.d.clone(), d.m.clone())
    }

    /// From coordinates `(δ, μ_1, ..., μ_r)` as a linear functional on divisor coefficients.
    pub(crate) fn from_functional(ctx: BlowupContext, z: &[Q]) -> Self {
        Self { ctx, delta: z[0].clone(), mu: z[1..].to_vec() }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}h", format_q(&self.delta))?;
        for (i, x) in self.mu.iter().enumerate() {
            write!(f, " - {} e{}", format_q(x), i + 1)?;
        }
        Ok(())
    }
}

/// JSON scalar: an integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatJson {
    Int(i64),
    Str(String),
}

impl RatJson {
    pub fn to_q(&self) -> Result<Q> {
        match self {
            RatJson::Int(i) => Ok(q(*i)),
            RatJson::Str(s) => parse_q(s),
        }
    }
}

impl From<&Q> for RatJson {
    fn from(x: &Q) -> Self {
        match to_i64(x) {
            Some(i) => RatJson::Int(i),
            None => RatJson::Str(format_q(x)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassJson {
    pub n: u32,
    pub r: usize,
    pub d: RatJson,
    pub m: Vec<RatJson>,
}

/// `p + q√b` for a fixed positive non-square rational `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticScalar {
    p: Q,
    q: Q,
    b: Q,
}

impl QuadraticScalar {
    pub fn new(p: Q, q: Q, b: Q) -> Result<Self> {
        if !b.is_positive() {
            return Err(Error::Precondition("radicand must be positive".into()));
        }
        if rational_sqrt(&b).is_some() {
            return Err(Error::Precondition(format!("radicand {} is a square", format_q(&b))));
        }
        Ok(Self { p, q, b })
    }

    pub fn rational(p: Q, b: &Q) -> Self {
        Self { p, q: Q::zero(), b: b.clone() }
    }

    /// `√b`.
    pub fn sqrt(b: &Q) -> Result<Self> {
        Self::new(Q::zero(), Q::one(), b.clone())
    }

    pub fn rational_part(&self) -> &Q {
        &self.p
    }

    pub fn irrational_part(&self) -> &Q {
        &self.q
    }

    pub fn radicand(&self) -> &Q {
        &self.b
    }

    pub fn conjugate(&self) -> Self {
        Self { p: self.p.clone(), q: -&self.q, b: self.b.clone() }
    }

    /// `p² - q² b`.
    pub fn norm(&self) -> Q {
        &self.p * &self.p - &self.q * &self.q * &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    fn same_field(&self, o: &Self) {
        assert_eq!(self.b, o.b, "mixing different quadratic fields");
    }
}

impl Add for &QuadraticScalar {
    type Output = QuadraticScalar;

    fn add(self, o: &QuadraticScalar) -> QuadraticScalar {
        self.same_field(o);
        QuadraticScalar { p: &self.p + &o.p, q: &self.q + &o.q, b: self.b.clone() }
    }
}

impl Sub for &QuadraticScalar {
    type Output = QuadraticScalar;

    fn sub(self, o: &QuadraticScalar) -> QuadraticScalar {
        self + &(-o)
    }
}

impl Neg for &QuadraticScalar {
    type Output = QuadraticScalar;

    fn neg(self) -> QuadraticScalar {
        QuadraticScalar { p: -&self.p, q: -&self.q, b: self.b.clone() }
    }
}

impl Mul for &QuadraticScalar {
    type Output = QuadraticScalar;

    fn mul(self, o: &QuadraticScalar) -> QuadraticScalar {
        self.same_field(o);
        QuadraticScalar {
            p: &self.p * &o.p + &self.q * &o.q * &self.b,
            q: &self.p * &o.q + &self.q * &o.p,
            b: self.b.clone(),
        }
    }
}

impl fmt::Display for QuadraticScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}√{}", format_q(&self.p), format_q(&self.q), format_q(&self.b))
    }
}

/// A surface class with coefficients in `ℚ(√b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticClass {
    pub ctx: BlowupContext,
    pub d: QuadraticScalar,
    pub m: Vec<QuadraticScalar>,
}

impl QuadraticClass {
    pub fn from_rational(c: &DivisorClass, b: &Q) -> Self {
        Self {
            ctx: c.ctx,
            d: QuadraticScalar::rational(c.d.clone(), b),
            m: c.m.iter().map(|x| QuadraticScalar::rational(x.clone(), b)).collect(),
        }
    }

    pub fn pair(&self, o: &QuadraticClass) -> Result<QuadraticScalar> {
        self.ctx.require_same(&o.ctx)?;
        self.ctx.require_surface()?;
        let mut acc = &self.d * &o.d;
        for (a, b) in self.m.iter().zip(&o.m) {
            acc = &acc - &(a * b);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qfrac;

    fn s(r: usize) -> BlowupContext {
        BlowupContext::surface(r)
    }

    #[test]
    fn pairing_examples() {
        let h = DivisorClass::hyperplane(s(0));
        assert_eq!(h.pair(&h).unwrap(), q(1));
        let d = DivisorClass::uniform(s(10), 10, 3, 10);
        assert_eq!(d.self_intersection().unwrap(), q(10));
        let mk = DivisorClass::uniform(s(10), 3, 1, 10);
        assert_eq!(d.pair(&mk).unwrap(), q(0));
    }

    #[test]
    fn pairing_errors() {
        let a = DivisorClass::hyperplane(s(2));
        let b = DivisorClass::hyperplane(s(3));
        assert!(matches!(a.pair(&b), Err(Error::ContextMismatch(..))));
        let c4 = BlowupContext::new(4, 2).unwrap();
        let h4 = DivisorClass::hyperplane(c4);
        assert!(matches!(h4.pair(&h4), Err(Error::NotSurface(4))));
    }

    #[test]
    fn curve_pairing_examples() {
        let ctx = BlowupContext::new(4, 14).unwrap();
        let d = DivisorClass::uniform(ctx, 2, 1, 14);
        assert_eq!(d.pair_curve(&CurveClass::line_through(ctx, &[0, 1])).unwrap(), q(0));
        let h = DivisorClass::hyperplane(ctx);
        assert_eq!(h.pair_curve(&CurveClass::exceptional(ctx, 4)).unwrap(), q(0));
        assert_eq!(d.pair_curve(&CurveClass::exceptional(ctx, 2)).unwrap(), q(1));
    }

    #[test]
    fn canonical_examples() {
        let k9 = canonical_class(s(9));
        assert_eq!(k9, DivisorClass::from_ints(s(9), -3, &[-1; 9]));
        assert_eq!(canonical_class(s(0)), DivisorClass::from_ints(s(0), -3, &[]));
        let k10 = canonical_class(s(10));
        assert_eq!(k10.pair(&k10).unwrap(), q(-1));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(DivisorClass::exceptional(s(3), 0).arithmetic_genus().unwrap(), q(0));
        assert_eq!(anticanonical_prefix(s(9), 9).arithmetic_genus().unwrap(), q(1));
        let l = DivisorClass::from_ints(s(4), 1, &[0, 1, 0, 1]);
        assert_eq!(l.arithmetic_genus().unwrap(), q(0));
    }

    #[test]
    fn vdim_fourteen_points() {
        let ctx = BlowupContext::new(4, 14).unwrap();
        let want = [0, -1, -1, 4];
        for (k, w) in (1..=4).zip(want) {
            let d = DivisorClass::uniform(ctx, 2 * k, k, 14);
            assert_eq!(d.vdim().unwrap(), q(w), "m = {k}");
        }
        // 10H - 5ΣE: C(14,4) - 14 C(8,4) - 1 = 1001 - 980 - 1
        assert_eq!(DivisorClass::uniform(ctx, 10, 5, 14).vdim().unwrap(), q(20));
        assert_eq!(DivisorClass::uniform(ctx, 4, 2, 14).edim().unwrap(), q(-1));
    }

    #[test]
    fn vdim_rejects_bad_input() {
        let c = DivisorClass::from_ints(s(2), 2, &[-1, 0]);
        assert!(matches!(c.vdim(), Err(Error::NegativeMultiplicity)));
        assert_eq!(c.vdim_surface().unwrap(), q(5));
        let frac = DivisorClass::new(s(1), qfrac(1, 2), vec![q(0)]).unwrap();
        assert!(matches!(frac.vdim(), Err(Error::NonInteger(_))));
        assert_eq!(DivisorClass::hyperplane(s(0)).vdim().unwrap(), q(2));
    }

    #[test]
    fn positive_cone_examples() {
        assert!(DivisorClass::hyperplane(s(1)).in_positive_cone().unwrap());
        assert!(!DivisorClass::exceptional(s(1), 0).in_positive_cone().unwrap());
        assert!(DivisorClass::uniform(s(10), 10, 3, 10).in_positive_cone().unwrap());
    }

    #[test]
    fn rr_examples() {
        use RrVerdict::*;
        assert_eq!(anticanonical_prefix(s(9), 9).rr_effective().unwrap(), CertifiedEffective);
        assert_eq!(DivisorClass::exceptional(s(2), 0).rr_effective().unwrap(), CertifiedEffective);
        let minus_h = -&DivisorClass::hyperplane(s(2));
        assert_eq!(minus_h.rr_effective().unwrap(), NoCertificate);
    }

    #[test]
    fn json_and_text() {
        let c = DivisorClass::new(s(2), qfrac(7, 2), vec![q(1), qfrac(-1, 3)]).unwrap();
        let j = serde_json::to_string(&c.to_json()).unwrap();
        assert_eq!(j, r#"{"n":2,"r":2,"d":"7/2","m":[1,"-1/3"]}"#);
        assert_eq!(DivisorClass::parse_json(&j).unwrap(), c);
        assert_eq!(c.to_string(), "7/2H - 1 E1 - -1/3 E2");
        assert!(DivisorClass::parse_json(r#"{"n":2,"r":2,"d":1,"m":[1]}"#).is_err());
        assert!(DivisorClass::parse_json(r#"{"n":1,"r":0,"d":1,"m":[]}"#).is_err());
    }

    #[test]
    fn quadratic_scalar_norm() {
        let b = q(2);
        let x = QuadraticScalar::new(q(3), qfrac(1, 2), b.clone()).unwrap();
        let prod = &x * &x.conjugate();
        assert_eq!(prod, QuadraticScalar::rational(x.norm(), &b));
        assert_eq!(x.norm(), q(9) - qfrac(1, 2));
        assert!(QuadraticScalar::new(q(1), q(1), q(4)).is_err());
        assert!(QuadraticScalar::new(q(1), q(1), q(-2)).is_err());
    }
}
