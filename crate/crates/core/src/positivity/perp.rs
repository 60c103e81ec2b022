//! The orthogonal complement `D^⊥` on a surface: an integer basis, its Gram
//! matrix, and the lattice points of `D^⊥` of large arithmetic genus.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{canonical_class, DivisorClass};
use crate::linalg::{integer_kernel, lll_reduce, negate, Ldl, Matrix};
use crate::rational::{integer_window, q, qint, Q};

#[derive(Debug, Clone)]
pub struct GramBasis {
    pub class: DivisorClass,
    pub basis: Vec<DivisorClass>,
    pub gram: Matrix,
    /// LDL pivots of `gram`; all negative.
    pub pivots: Vec<Q>,
}

fn require_big(d: &DivisorClass) -> Result<()> {
    d.ctx().require_surface()?;
    if !d.is_integral() {
        return Err(Error::NonInteger(d.to_string()));
    }
    if !d.self_intersection()?.is_positive() {
        return Err(Error::Precondition(format!("{d} does not have positive square")));
    }
    Ok(())
}

fn to_class(d: &DivisorClass, coeffs: &[BigInt]) -> DivisorClass {
    let c: Vec<Q> = coeffs.iter().map(qint).collect();
    DivisorClass::from_coefficients(d.ctx(), &c).expect("length matches")
}

/// Integer basis of `D^⊥`, LLL-reduced for `-(·,·)` and sign-normalized, with an
/// exact negative definiteness certificate.
pub fn dperp_gram(d: &DivisorClass) -> Result<GramBasis> {
    require_big(d)?;
    // x·D = Σ c_j w_j in coefficient coordinates
    let w: Vec<BigInt> = d
        .coefficients()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let c = c.to_integer();
            if j == 0 { c } else { -c }
        })
        .collect();
    let kernel = integer_kernel(&w);
    let neg_pair = |a: &[BigInt], b: &[BigInt]| -> Q {
        let s: BigInt = &a[0] * &b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<BigInt>();
        -qint(&s)
    };
    let mut reduced = lll_reduce(kernel, neg_pair);
    for v in &mut reduced {
        if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
    let basis: Vec<DivisorClass> = reduced.iter().map(|v| to_class(d, v)).collect();
    let gram: Matrix = basis
        .iter()
        .map(|a| basis.iter().map(|b| a.pair_unchecked(b)).collect())
        .collect();
    let pivots = if gram.is_empty() {
        Vec::new()
    } else {
        let ldl = Ldl::factor(&gram).ok_or(Error::NotNegativeDefinite)?;
        if !ldl.is_negative_definite() {
            return Err(Error::NotNegativeDefinite);
        }
        ldl.pivots
    };
    Ok(GramBasis { class: d.clone(), basis, gram, pivots })
}

impl GramBasis {
    /// `k_j = B_j·K`.
    fn canonical_row(&self) -> Vec<Q> {
        let k = canonical_class(self.class.ctx());
        self.basis.iter().map(|b| b.pair_unchecked(&k)).collect()
    }

    /// Combination `Σ c_j B_j`.
    pub fn combine(&self, c: &[BigInt]) -> DivisorClass {
        let mut out = DivisorClass::zero(self.class.ctx());
        for (cj, b) in c.iter().zip(&self.basis) {
            if !cj.is_zero() {
                out = &out + &b.scale(&qint(cj));
            }
        }
        out
    }
}

/// In basis coordinates `p_a(x) = ½(cᵀGc + kᵀc) + 1`; its maximum over the
/// real span is `1 + ¼ kᵀc*` at `G c* = -½k`.
pub fn pa_perp_upper(d: &DivisorClass) -> Result<Q> {
    let g = dperp_gram(d)?;
    Ok(upper_from(&g).0)
}

fn upper_from(g: &GramBasis) -> (Q, Vec<Q>, Option<Ldl>) {
    if g.basis.is_empty() {
        return (q(1), Vec::new(), None);
    }
    let k = g.canonical_row();
    // P = -G is positive definite; c0 = ½ P⁻¹ k maximizes
    let p = negate(&g.gram);
    let ldl = Ldl::factor(&p).expect("negative definite Gram");
    let half_k: Vec<Q> = k.iter().map(|x| x / q(2)).collect();
    let c0 = ldl.solve(&half_k);
    let upper = q(1) + k.iter().zip(&c0).map(|(a, b)| a * b).sum::<Q>() / q(4);
    (upper, c0, Some(ldl))
}

/// Every nonzero integer `x ∈ D^⊥` with `p_a(x) >= t`, in ascending order of
/// `(d, m_1, ..., m_r)`.
///
/// With `P = -G` and `c0 = ½P⁻¹k`, the condition reads
/// `(c - c0)ᵀ P (c - c0) <= 2(upper - t)`, enumerated coordinate by coordinate
/// from the LDL factors with exact integer windows.
pub fn pa_perp_candidates(d: &DivisorClass, t: i64) -> Result<Vec<DivisorClass>> {
    if t < 1 {
        return Err(Error::Precondition(format!("genus threshold {t} must be at least 1")));
    }
    let g = dperp_gram(d)?;
    let (upper, c0, ldl) = upper_from(&g);
    let Some(ldl) = ldl else {
        return Ok(Vec::new());
    };
    let radius = q(2) * (&upper - q(t));
    if radius.is_negative() {
        return Ok(Vec::new());
    }
    let dim = g.basis.len();
    let mut out = Vec::new();
    let mut coords = vec![BigInt::zero(); dim];
    enumerate(&ldl, &c0, dim, &radius, &mut coords, &mut |c| {
        if c.iter().all(Zero::is_zero) {
            return;
        }
        let x = g.combine(c);
        if x.arithmetic_genus().expect("surface class") >= q(t) {
            out.push(x);
        }
    });
    out.sort_by(|a, b| a.coefficients_sort_key().cmp(&b.coefficients_sort_key()));
    Ok(out)
}

/// `(c - c0)ᵀ L diag(δ) Lᵀ (c - c0) = Σ_j δ_j y_j²` with
/// `y_j = (c_j - c0_j) + Σ_{i>j} L_ij (c_i - c0_i)`; fix coordinates from the last.
fn enumerate(
    ldl: &Ldl,
    c0: &[Q],
    level: usize,
    budget: &Q,
    coords: &mut Vec<BigInt>,
    visit: &mut dyn FnMut(&[BigInt]),
) {
    if level == 0 {
        visit(coords);
        return;
    }
    let j = level - 1;
    let mut shift = Q::zero();
    for i in j + 1..coords.len() {
        shift += &ldl.lower[i][j] * (qint(&coords[i]) - &c0[i]);
    }
    let center = &c0[j] - &shift;
    let Some((lo, hi)) = integer_window(&center, &(budget / &ldl.pivots[j])) else {
        return;
    };
    let mut x = lo;
    while x <= hi {
        let y = qint(&x) - &center;
        let rest = budget - &ldl.pivots[j] * &y * &y;
        coords[j] = x.clone();
        enumerate(ldl, c0, j, &rest, coords, visit);
        x += 1;
    }
    coords[j] = BigInt::zero();
}

impl DivisorClass {
    pub(crate) fn coefficients_sort_key(&self) -> (Q, Vec<Q>) {
        (self.degree().clone(), self.multiplicities().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::BlowupContext;
    use crate::rational::qfrac;

    fn s(r: usize) -> BlowupContext {
        BlowupContext::surface(r)
    }

    #[test]
    fn hyperplane_on_two_points() {
        let h = DivisorClass::hyperplane(s(2));
        let g = dperp_gram(&h).unwrap();
        assert_eq!(g.gram, vec![vec![q(-1), q(0)], vec![q(0), q(-1)]]);
        for b in &g.basis {
            assert_eq!(b.degree(), &q(0));
        }
        assert_eq!(pa_perp_upper(&h).unwrap(), qfrac(5, 4));
    }

    #[test]
    fn hyperplane_alone() {
        let h = DivisorClass::hyperplane(s(0));
        assert!(dperp_gram(&h).unwrap().basis.is_empty());
        assert_eq!(pa_perp_upper(&h).unwrap(), q(1));
        assert!(pa_perp_candidates(&h, 1).unwrap().is_empty());
    }

    #[test]
    fn mix_class_gram() {
        let d = DivisorClass::uniform(s(10), 10, 3, 10);
        let g = dperp_gram(&d).unwrap();
        assert_eq!(g.pivots.len(), 10);
        assert!(g.pivots.iter().all(Signed::is_negative));
        assert!(pa_perp_upper(&d).unwrap() >= q(1));
        let mk = DivisorClass::uniform(s(10), 3, 1, 10);
        assert_eq!(pa_perp_candidates(&d, 1).unwrap(), vec![mk]);
    }

    #[test]
    fn basis_is_orthogonal() {
        let d = DivisorClass::from_ints(s(1), 4, &[1]);
        let g = dperp_gram(&d).unwrap();
        assert_eq!(g.basis.len(), 1);
        for b in &g.basis {
            assert_eq!(b.pair(&d).unwrap(), q(0));
        }
        assert!(dperp_gram(&DivisorClass::from_ints(s(1), 1, &[1])).is_err());
    }
}
