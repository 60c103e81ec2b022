//! Classes on `X^2_10` with `D² = D·K = 0` built from a class `B` on `X^2_8`.

use num_traits::Signed;
use serde_json::json;

use crate::error::{Error, Result};
use crate::lattice::{canonical_class, BlowupContext, DivisorClass, QuadraticClass, QuadraticScalar};
use crate::rational::{format_q, q, rational_sqrt, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyClass {
    /// `b` is a rational square.
    Rational(DivisorClass),
    Quadratic(QuadraticClass),
}

#[derive(Debug, Clone)]
pub struct QuadraticFamily {
    pub a: Q,
    pub b: Q,
    pub class: FamilyClass,
    pub self_intersection: QuadraticScalar,
    pub canonical_degree: QuadraticScalar,
}

impl QuadraticFamily {
    pub fn holds(&self) -> bool {
        self.self_intersection.is_zero() && self.canonical_degree.is_zero()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let class = match &self.class {
            FamilyClass::Rational(c) => c.to_json_value(),
            FamilyClass::Quadratic(c) => json!({
                "n": c.ctx.n(),
                "r": c.ctx.r(),
                "d": c.d.to_string(),
                "m": c.m.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
        };
        json!({
            "a": format_q(&self.a),
            "b": format_q(&self.b),
            "class": class,
            "selfIntersectionZero": self.self_intersection.is_zero(),
            "canonicalZero": self.canonical_degree.is_zero(),
            "holds": self.holds(),
        })
    }
}

/// `a = -½B·K_8`, `b = ¼(2B² - (B·K_8)²)` and
/// `D = B - (a + √b)E_9 - (a - √b)E_10`, with `D²` and `D·K_10` computed exactly.
pub fn verify_quadratic_family(b_class: &DivisorClass) -> Result<QuadraticFamily> {
    let ctx8 = b_class.ctx();
    if ctx8 != BlowupContext::surface(8) {
        return Err(Error::Precondition(format!("expected a class on X^2_8, got {ctx8}")));
    }
    let bk = b_class.pair(&canonical_class(ctx8))?;
    let b2 = b_class.self_intersection()?;
    let a = -&bk / q(2);
    let b = (q(2) * &b2 - &bk * &bk) / q(4);
    if !b.is_positive() {
        return Err(Error::Precondition(format!("b = {} is not positive", format_q(&b))));
    }
    let ctx10 = BlowupContext::surface(10);
    let k10 = canonical_class(ctx10);
    if let Some(s) = rational_sqrt(&b) {
        let mut m = b_class.multiplicities().to_vec();
        m.push(&a + &s);
        m.push(&a - &s);
        let d = DivisorClass::new(ctx10, b_class.degree().clone(), m)?;
        let d2 = d.self_intersection()?;
        let dk = d.pair(&k10)?;
        return Ok(QuadraticFamily {
            a,
            b: b.clone(),
            class: FamilyClass::Rational(d),
            self_intersection: QuadraticScalar::rational(d2, &b),
            canonical_degree: QuadraticScalar::rational(dk, &b),
        });
    }
    let root = QuadraticScalar::sqrt(&b)?;
    let a_q = QuadraticScalar::rational(a.clone(), &b);
    let mut m: Vec<QuadraticScalar> = b_class
        .multiplicities()
        .iter()
        .map(|x| QuadraticScalar::rational(x.clone(), &b))
        .collect();
    m.push(&a_q + &root);
    m.push(&a_q - &root);
    let d = QuadraticClass { ctx: ctx10, d: QuadraticScalar::rational(b_class.degree().clone(), &b), m };
    let kq = QuadraticClass::from_rational(&k10, &b);
    let d2 = d.pair(&d)?;
    let dk = d.pair(&kq)?;
    Ok(QuadraticFamily { a, b, class: FamilyClass::Quadratic(d), self_intersection: d2, canonical_degree: dk })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_instance() {
        let b = DivisorClass::uniform(BlowupContext::surface(8), 6, 2, 8);
        let fam = verify_quadratic_family(&b).unwrap();
        assert_eq!((fam.a.clone(), fam.b.clone()), (q(1), q(1)));
        assert_eq!(fam.class, FamilyClass::Rational(DivisorClass::uniform(BlowupContext::surface(10), 6, 2, 9)));
        assert!(fam.holds());
    }

    #[test]
    fn irrational_instance() {
        // B² = 7, B·K = -3, b = 5/4
        let b = DivisorClass::from_ints(BlowupContext::surface(8), 6, &[2, 2, 2, 2, 2, 2, 2, 1]);
        let fam = verify_quadratic_family(&b).unwrap();
        assert!(matches!(fam.class, FamilyClass::Quadratic(_)));
        assert_eq!(fam.b, crate::rational::qfrac(5, 4));
        assert!(fam.holds());
        let bad = DivisorClass::from_ints(BlowupContext::surface(8), 3, &[1, 0, 0, 0, 0, 0, 0, 0]);
        assert!(verify_quadratic_family(&bad).is_err());
    }
}
