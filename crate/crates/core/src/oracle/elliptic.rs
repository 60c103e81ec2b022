//! Short Weierstrass curves `y² = x³ + ax + b` over `F_p`, `p > 3`.

use rand::Rng;

use crate::error::{Error, Result};

use super::field::FiniteField;

/// Point counting walks every `x`, so it is limited to `p <= 2^20`.
pub const MAX_COUNT_PRIME: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EcPoint {
    Infinity,
    Affine(u64, u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub field: FiniteField,
    pub a: u64,
    pub b: u64,
}

impl WeierstrassCurve {
    /// Rejects `p <= 3` and singular curves (`4a³ + 27b² = 0`).
    pub fn new(field: FiniteField, a: u64, b: u64) -> Result<Self> {
        let f = field;
        if f.p() <= 3 {
            return Err(Error::Curve(format!("characteristic {} is too small", f.p())));
        }
        let (a, b) = (a % f.p(), b % f.p());
        let disc = f.add(f.mul(4, f.pow(a, 3)), f.mul(27, f.mul(b, b)));
        if disc == 0 {
            return Err(Error::Curve(format!("y^2 = x^3 + {a}x + {b} is singular")));
        }
        Ok(Self { field, a, b })
    }

    fn rhs(&self, x: u64) -> u64 {
        let f = &self.field;
        f.add(f.add(f.pow(x, 3), f.mul(self.a, x)), self.b)
    }

    pub fn contains(&self, pt: &EcPoint) -> bool {
        match *pt {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, y) => self.field.mul(y, y) == self.rhs(x),
        }
    }

    pub fn neg(&self, pt: &EcPoint) -> EcPoint {
        match *pt {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(x, self.field.neg(y)),
        }
    }

    pub fn add(&self, p1: &EcPoint, p2: &EcPoint) -> EcPoint {
        let f = &self.field;
        let (x1, y1, x2, y2) = match (*p1, *p2) {
            (EcPoint::Infinity, q) | (q, EcPoint::Infinity) => return q,
            (EcPoint::Affine(x1, y1), EcPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return EcPoint::Infinity;
            }
            let num = f.add(f.mul(3, f.mul(x1, x1)), self.a);
            f.mul(num, f.inv(f.mul(2, y1)))
        } else {
            f.mul(f.sub(y2, y1), f.inv(f.sub(x2, x1)))
        };
        let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
        let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
        EcPoint::Affine(x3, y3)
    }

    pub fn sub(&self, p1: &EcPoint, p2: &EcPoint) -> EcPoint {
        self.add(p1, &self.neg(p2))
    }

    pub fn mul(&self, k: i64, pt: &EcPoint) -> EcPoint {
        let mut base = if k < 0 { self.neg(pt) } else { *pt };
        let mut k = k.unsigned_abs();
        let mut acc = EcPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// `#E(F_p) = p + 1 + Σ_x χ(x³ + ax + b)` by a full character sum.
    pub fn count_points(&self) -> Result<u64> {
        let p = self.field.p();
        if p > MAX_COUNT_PRIME {
            return Err(Error::Curve(format!("point counting needs p <= 2^20, got {p}")));
        }
        let mut total = p as i64 + 1;
        for x in 0..p {
            let v = self.rhs(x);
            if v != 0 {
                total += if self.field.is_square(v) { 1 } else { -1 };
            }
        }
        Ok(total as u64)
    }

    pub fn random_point<R: Rng>(&self, rng: &mut R) -> EcPoint {
        loop {
            let x = self.field.random(rng);
            if let Some(y) = self.field.sqrt(self.rhs(x)) {
                let y = if rng.gen::<bool>() { self.field.neg(y) } else { y };
                return EcPoint::Affine(x, y);
            }
        }
    }

    pub fn two_torsion(&self) -> Vec<EcPoint> {
        (0..self.field.p())
            .filter(|&x| self.rhs(x) == 0)
            .map(|x| EcPoint::Affine(x, 0))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn group_law_spot_checks() {
        let f = FiniteField::new(10007).unwrap();
        let e = WeierstrassCurve::new(f, 3, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (a, b, c) = (e.random_point(&mut rng), e.random_point(&mut rng), e.random_point(&mut rng));
            assert!(e.contains(&a));
            let s = e.add(&e.add(&a, &b), &c);
            assert_eq!(s, e.add(&a, &e.add(&b, &c)));
            assert!(e.contains(&s));
            assert_eq!(e.add(&a, &e.neg(&a)), EcPoint::Infinity);
        }
    }

    #[test]
    fn order_annihilates_points() {
        let f = FiniteField::new(1009).unwrap();
        let e = WeierstrassCurve::new(f, 1, 1).unwrap();
        let n = e.count_points().unwrap();
        assert!((n as f64 - 1010.0).abs() <= 2.0 * (1009f64).sqrt());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let pt = e.random_point(&mut rng);
            assert_eq!(e.mul(n as i64, &pt), EcPoint::Infinity);
        }
        // brute-force count agrees
        let brute = 1 + (0..1009u64)
            .flat_map(|x| (0..1009u64).map(move |y| (x, y)))
            .filter(|&(x, y)| e.contains(&EcPoint::Affine(x, y)))
            .count() as u64;
        assert_eq!(n, brute);
    }

    #[test]
    fn singular_curve_rejected() {
        let f = FiniteField::new(101).unwrap();
        assert!(WeierstrassCurve::new(f, 0, 0).is_err());
        assert!(WeierstrassCurve::new(FiniteField::new(3).unwrap(), 1, 1).is_err());
    }
}
