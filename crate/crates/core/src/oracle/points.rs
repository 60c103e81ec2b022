//! Point configurations over `F_p`, stored in the affine chart where the last
//! homogeneous coordinate is 1.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};

use super::elliptic::{EcPoint, WeierstrassCurve};
use super::field::FiniteField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointKind {
    GeneralRandom { seed: u64 },
    /// Points on `y² = x³ + ax + b` summing to the 2-torsion point `(tx, 0)`.
    OnCubicTorsion { a: u64, b: u64, torsion: (u64, u64), seed: u64 },
    /// Points `(t, t⁴)` on the rational quartic `y z³ = x⁴`.
    OnRationalQuartic { seed: u64 },
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    pub field: FiniteField,
    pub n: u32,
    pub kind: PointKind,
    pub points: Vec<Vec<u64>>,
}

impl PointConfig {
    pub fn explicit(field: FiniteField, n: u32, points: Vec<Vec<u64>>) -> Result<Self> {
        let cfg = Self { field, n, kind: PointKind::Explicit, points };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `r` uniformly random distinct points of `A^n(F_p)`.
    pub fn general_random(field: FiniteField, n: u32, r: usize, seed: u64) -> Result<Self> {
        let total = (field.p() as f64).powi(n as i32);
        if (r as f64) > total {
            return Err(Error::Points(format!("F_{} has fewer than {r} affine points", field.p())));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen = HashSet::new();
        let mut points = Vec::with_capacity(r);
        while points.len() < r {
            let pt: Vec<u64> = (0..n).map(|_| field.random(&mut rng)).collect();
            if seen.insert(pt.clone()) {
                points.push(pt);
            }
        }
        Ok(Self { field, n, kind: PointKind::GeneralRandom { seed }, points })
    }

    /// `r` points `(t, t⁴)` with distinct random `t`.
    pub fn on_rational_quartic(field: FiniteField, r: usize, seed: u64) -> Result<Self> {
        if r as u64 > field.p() {
            return Err(Error::Points(format!("F_{} has fewer than {r} parameters", field.p())));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen = HashSet::new();
        let mut points = Vec::with_capacity(r);
        while points.len() < r {
            let t = field.random(&mut rng);
            if seen.insert(t) {
                points.push(vec![t, field.pow(t, 4)]);
            }
        }
        Ok(Self { field, n: 2, kind: PointKind::OnRationalQuartic { seed }, points })
    }

    pub fn r(&self) -> usize {
        self.points.len()
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for pt in &self.points {
            if pt.len() != self.n as usize {
                return Err(Error::Points(format!("point {pt:?} is not in A^{}", self.n)));
            }
            if pt.iter().any(|&x| x >= self.field.p()) {
                return Err(Error::Points(format!("point {pt:?} has unreduced coordinates")));
            }
            if !seen.insert(pt) {
                return Err(Error::Points(format!("duplicate point {pt:?}")));
            }
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let kind = match &self.kind {
            PointKind::GeneralRandom { seed } => json!({"generalRandom": {"seed": seed}}),
            PointKind::OnCubicTorsion { a, b, torsion, seed } => json!({"onCubicTorsion": {
                "a": a, "b": b, "torsion": [torsion.0, torsion.1], "seed": seed
            }}),
            PointKind::OnRationalQuartic { seed } => json!({"onRationalQuartic": {"seed": seed}}),
            PointKind::Explicit => json!("explicit"),
        };
        json!({"p": self.field.p(), "n": self.n, "kind": kind, "points": self.points})
    }
}

/// A random curve through a rational 2-torsion point `T` and `r` distinct affine
/// points on it whose group sum is `T`. Then `3Σp_i = 3T = T`, so the restriction
/// of `10H - 3ΣE_i` (for `r = 10`) to the cubic is the nonzero 2-torsion class.
pub fn sample_on_cubic_torsion(field: FiniteField, r: usize, seed: u64) -> Result<(WeierstrassCurve, PointConfig)> {
    if r == 0 {
        return Err(Error::Points("need at least one point".into()));
    }
    if field.p() > super::elliptic::MAX_COUNT_PRIME || field.p() < 11 {
        return Err(Error::Prime(field.p(), "torsion construction needs 11 <= p <= 2^20".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let x0 = field.random(&mut rng);
        let a = field.random(&mut rng);
        // b chosen so that x0 is a root of x³ + ax + b
        let b = field.neg(field.add(field.pow(x0, 3), field.mul(a, x0)));
        let Ok(curve) = WeierstrassCurve::new(field, a, b) else {
            continue;
        };
        let t = EcPoint::Affine(x0, 0);
        let mut pts: Vec<EcPoint> = Vec::with_capacity(r);
        let mut sum = EcPoint::Infinity;
        while pts.len() < r - 1 {
            let pt = curve.random_point(&mut rng);
            if !pts.contains(&pt) {
                sum = curve.add(&sum, &pt);
                pts.push(pt);
            }
        }
        let last = curve.sub(&t, &sum);
        if last == EcPoint::Infinity || pts.contains(&last) {
            continue;
        }
        pts.push(last);
        let points = pts
            .iter()
            .map(|p| match *p {
                EcPoint::Affine(x, y) => vec![x, y],
                EcPoint::Infinity => unreachable!("only affine points are kept"),
            })
            .collect();
        let cfg = PointConfig {
            field,
            n: 2,
            kind: PointKind::OnCubicTorsion { a, b, torsion: (x0, 0), seed },
            points,
        };
        cfg.validate()?;
        return Ok((curve, cfg));
    }
    Err(Error::Curve("no admissible curve found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_points_are_distinct() {
        let f = FiniteField::new(5).unwrap();
        let cfg = PointConfig::general_random(f, 2, 25, 1).unwrap();
        cfg.validate().unwrap();
        assert!(PointConfig::general_random(f, 2, 26, 1).is_err());
        assert!(PointConfig::explicit(f, 2, vec![vec![1, 2], vec![1, 2]]).is_err());
    }

    #[test]
    fn torsion_points_satisfy_constraints() {
        let f = FiniteField::new(65537).unwrap();
        for seed in 0..3 {
            let (curve, cfg) = sample_on_cubic_torsion(f, 10, seed).unwrap();
            let PointKind::OnCubicTorsion { torsion, .. } = cfg.kind else { panic!() };
            let t = EcPoint::Affine(torsion.0, torsion.1);
            assert!(curve.contains(&t));
            assert_eq!(curve.add(&t, &t), EcPoint::Infinity);
            let mut sum = EcPoint::Infinity;
            for p in &cfg.points {
                let pt = EcPoint::Affine(p[0], p[1]);
                assert!(curve.contains(&pt));
                sum = curve.add(&sum, &pt);
            }
            assert_eq!(curve.add(&curve.mul(3, &sum), &t), EcPoint::Infinity);
        }
    }
}
