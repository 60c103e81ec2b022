//! Interpolation matrices of fat-point linear systems and their corank.

use num_traits::ToPrimitive;
use serde_json::json;

use crate::error::{Error, Result};
use crate::lattice::DivisorClass;
use crate::rational::to_i64;

use super::field::FiniteField;
use super::points::PointConfig;

/// Exponent vectors in `n` variables of total degree at most `d`, graded then
/// lexicographic.
fn exponents(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

fn integer_class(d: &DivisorClass) -> Result<(i64, Vec<i64>)> {
    let v = d.to_i64s()?;
    Ok((v[0], v[1..].to_vec()))
}

/// Number of columns `C(d+n, n)` of the interpolation matrix, `0` when `d < 0`.
pub fn column_count(d: &DivisorClass) -> Result<u128> {
    let deg = to_i64(d.degree()).ok_or_else(|| Error::NonInteger(d.to_string()))?;
    if deg < 0 {
        return Ok(0);
    }
    let n = d.ctx().n() as u128;
    let mut c: u128 = 1;
    for i in 1..=n {
        c = c * (deg as u128 + i) / i;
    }
    Ok(c)
}

/// Rows impose `∂^β f(P) = 0` for `|β| < m` at each point, columns index the
/// degree `d` monomials dehomogenized at the last coordinate. Negative
/// multiplicities impose nothing.
pub fn conditions_matrix(d: &DivisorClass, cfg: &PointConfig) -> Result<Vec<Vec<u64>>> {
    let ctx = d.ctx();
    if ctx.n() != cfg.n {
        return Err(Error::Points(format!("points live in A^{} but the class is on {ctx}", cfg.n)));
    }
    if ctx.r() != cfg.r() {
        return Err(Error::Points(format!("{} points for {ctx}", cfg.r())));
    }
    cfg.validate()?;
    let (deg, mult) = integer_class(d)?;
    let f = cfg.field;
    if deg >= 0 && deg as u64 >= f.p() {
        return Err(Error::Prime(f.p(), format!("must exceed the degree {deg}")));
    }
    if deg < 0 {
        return Ok(Vec::new());
    }
    let n = ctx.n() as usize;
    let deg = deg as usize;
    let cols = exponents(n, deg);
    let mut rows = Vec::new();
    for (pt, &m) in cfg.points.iter().zip(&mult) {
        if m <= 0 {
            continue;
        }
        let order = (m as usize - 1).min(deg);
        // powers[j][e] = pt_j^e
        let powers: Vec<Vec<u64>> = pt
            .iter()
            .map(|&x| {
                let mut v = vec![1u64; deg + 1];
                for e in 1..=deg {
                    v[e] = f.mul(v[e - 1], x);
                }
                v
            })
            .collect();
        for beta in exponents(n, order) {
            let row = cols
                .iter()
                .map(|alpha| {
                    let mut acc = 1u64;
                    for j in 0..n {
                        if alpha[j] < beta[j] {
                            return 0;
                        }
                        // falling factorial α_j (α_j - 1) ... (α_j - β_j + 1)
                        for t in 0..beta[j] {
                            acc = f.mul(acc, (alpha[j] - t) as u64);
                        }
                        acc = f.mul(acc, powers[j][alpha[j] - beta[j]]);
                    }
                    acc
                })
                .collect();
            rows.push(row);
        }
        // derivatives of order above d vanish identically, so they add only zero rows
        let extra = binomial_usize(m as usize - 1 + n, n) - binomial_usize(order + n, n);
        rows.extend(std::iter::repeat_n(vec![0u64; cols.len()], extra));
    }
    Ok(rows)
}

fn binomial_usize(a: usize, k: usize) -> usize {
    if k > a {
        return 0;
    }
    let mut c = 1usize;
    for i in 1..=k {
        c = c * (a - k + i) / i;
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpolationResult {
    pub class: DivisorClass,
    pub p: u64,
    pub h0: i64,
    pub rank: i64,
    pub columns: i64,
    pub vdim: i64,
    pub edim: i64,
    /// Surfaces only, and only when `h²` vanishes, i.e. `(K - D)·H < 0`.
    pub h1: Option<i64>,
    pub special: bool,
}

impl InterpolationResult {
    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "class": self.class.to_json_value(),
            "p": self.p,
            "h0": self.h0,
            "rank": self.rank,
            "vdim": self.vdim,
            "edim": self.edim,
            "h1": self.h1,
            "special": self.special,
        })
    }
}

fn expected(d: &DivisorClass) -> Result<i64> {
    let v = if d.ctx().is_surface() { d.vdim_surface()? } else { d.vdim()? };
    to_i64(&v).ok_or_else(|| Error::NonInteger(d.to_string()))
}

/// `h⁰` at one configuration.
pub fn h0_at(d: &DivisorClass, cfg: &PointConfig) -> Result<InterpolationResult> {
    let rows = conditions_matrix(d, cfg)?;
    let columns = column_count(d)?
        .to_i64()
        .ok_or_else(|| Error::Precondition("too many monomials".into()))?;
    let rank = if rows.is_empty() || columns == 0 { 0 } else { cfg.field.rank(rows) as i64 };
    let h0 = columns - rank;
    let vdim = expected(d)?;
    let edim = vdim.max(-1);
    let deg = to_i64(d.degree()).ok_or_else(|| Error::NonInteger(d.to_string()))?;
    let h1 = (d.ctx().is_surface() && deg > -3).then_some(h0 - (vdim + 1));
    Ok(InterpolationResult {
        class: d.clone(),
        p: cfg.field.p(),
        h0,
        rank,
        columns,
        vdim,
        edim,
        h1,
        special: h0 - 1 != edim,
    })
}

/// `h⁰` at uniformly random points, minimized over the seeds. By
/// semicontinuity the minimum is an upper bound for the very general value.
pub fn h0(d: &DivisorClass, field: FiniteField, seeds: &[u64]) -> Result<InterpolationResult> {
    if seeds.is_empty() {
        return Err(Error::Precondition("at least one seed is required".into()));
    }
    let mut best: Option<InterpolationResult> = None;
    for &seed in seeds {
        let cfg = PointConfig::general_random(field, d.ctx().n(), d.ctx().r(), seed)?;
        let res = h0_at(d, &cfg)?;
        if best.as_ref().is_none_or(|b| res.h0 < b.h0) {
            best = Some(res);
        }
    }
    Ok(best.expect("seeds are nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::BlowupContext;

    fn field() -> FiniteField {
        FiniteField::new(65537).unwrap()
    }

    #[test]
    fn pencil_of_lines() {
        let ctx = BlowupContext::surface(1);
        let d = DivisorClass::from_ints(ctx, 1, &[1]);
        let cfg = PointConfig::general_random(field(), 2, 1, 0).unwrap();
        let m = conditions_matrix(&d, &cfg).unwrap();
        assert_eq!((m.len(), m[0].len()), (1, 3));
        let res = h0_at(&d, &cfg).unwrap();
        assert_eq!((res.rank, res.h0), (1, 2));
    }

    #[test]
    fn double_line() {
        let ctx = BlowupContext::surface(2);
        let d = DivisorClass::from_ints(ctx, 2, &[2, 2]);
        let res = h0(&d, field(), &[1, 2, 3]).unwrap();
        assert_eq!(res.h0, 1);
        assert_eq!(res.edim, -1);
        assert!(res.special);
        assert_eq!(res.h1, Some(1));
    }

    #[test]
    fn fourteen_points_shape() {
        let ctx = BlowupContext::new(4, 14).unwrap();
        let d = DivisorClass::uniform(ctx, 2, 1, 14);
        let cfg = PointConfig::general_random(field(), 4, 14, 9).unwrap();
        let m = conditions_matrix(&d, &cfg).unwrap();
        assert_eq!((m.len(), m[0].len()), (14, 15));
        assert_eq!(h0_at(&d, &cfg).unwrap().h0, 1);
    }

    #[test]
    fn plane_cubics() {
        let d = DivisorClass::from_ints(BlowupContext::surface(0), 3, &[]);
        assert_eq!(h0(&d, field(), &[0]).unwrap().h0, 10);
    }

    #[test]
    fn high_multiplicity_and_negative_degree() {
        let ctx = BlowupContext::surface(1);
        let d = DivisorClass::from_ints(ctx, 2, &[5]);
        let res = h0(&d, field(), &[0]).unwrap();
        assert_eq!(res.h0, 0);
        let neg = DivisorClass::from_ints(ctx, -1, &[0]);
        assert_eq!(h0(&neg, field(), &[0]).unwrap().h0, 0);
        // E_1 contributes no sections beyond those of 0
        let e = DivisorClass::from_ints(ctx, 0, &[-1]);
        assert_eq!(h0(&e, field(), &[0]).unwrap().h0, 1);
    }

    #[test]
    fn prime_must_exceed_degree() {
        let ctx = BlowupContext::surface(1);
        let d = DivisorClass::from_ints(ctx, 7, &[1]);
        let f = FiniteField::new(7).unwrap();
        let cfg = PointConfig::general_random(f, 2, 1, 0).unwrap();
        assert!(matches!(conditions_matrix(&d, &cfg), Err(Error::Prime(7, _))));
    }
}
