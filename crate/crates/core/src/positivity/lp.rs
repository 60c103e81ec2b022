//! Exact phase-one simplex deciding membership in a finitely generated cone.
//!
//! Columns are supplied by an oracle that returns the generator maximizing
//! `y·g`, so cones with exponentially many generators are priced in closed form.
//! The lexicographic ratio test rules out cycling regardless of which improving
//! column the oracle hands back.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::linalg::dot;
use crate::rational::Q;

pub(crate) trait ColumnOracle {
    type Id: Clone;

    /// A generator with `y·g > 0`, preferably the one maximizing it.
    fn improving_column(&self, y: &[Q]) -> Option<(Self::Id, Vec<Q>)>;
}

pub(crate) enum Membership<Id> {
    /// `target = Σ λ_j g_j` with `λ_j > 0`.
    Member(Vec<(Id, Q)>),
    /// `y` with `y·g <= 0` for every generator and `y·target > 0`.
    Separated(Vec<Q>),
}

enum BasicVar<Id> {
    Artificial,
    Column(Id),
}

pub(crate) fn cone_membership<O: ColumnOracle>(oracle: &O, target: &[Q]) -> Membership<O::Id> {
    let m = target.len();
    let sign: Vec<Q> = target
        .iter()
        .map(|t| if t.is_negative() { -Q::one() } else { Q::one() })
        .collect();
    let flip = |v: &[Q]| -> Vec<Q> { v.iter().zip(&sign).map(|(a, s)| a * s).collect() };
    let b = flip(target);

    let mut basis: Vec<BasicVar<O::Id>> = (0..m).map(|_| BasicVar::Artificial).collect();
    let mut binv = crate::linalg::identity(m);
    let mut xb = b.clone();

    loop {
        // y = c_B B⁻¹ with cost 1 on artificials
        let mut y = vec![Q::zero(); m];
        for (row, var) in basis.iter().enumerate() {
            if let BasicVar::Artificial = var {
                for (yi, bij) in y.iter_mut().zip(&binv[row]) {
                    *yi += bij;
                }
            }
        }
        let y_orig = flip(&y);
        let entering = oracle.improving_column(&y_orig).filter(|(_, g)| dot(&y_orig, g).is_positive());
        let Some((id, g)) = entering else {
            let objective: Q = basis
                .iter()
                .zip(&xb)
                .filter(|(v, _)| matches!(v, BasicVar::Artificial))
                .map(|(_, x)| x.clone())
                .sum();
            if objective.is_zero() {
                let mut combo = Vec::new();
                for (var, x) in basis.into_iter().zip(xb) {
                    if let BasicVar::Column(id) = var {
                        if x.is_positive() {
                            combo.push((id, x));
                        }
                    }
                }
                return Membership::Member(combo);
            }
            return Membership::Separated(y_orig);
        };
        let col = flip(&g);
        let u: Vec<Q> = binv.iter().map(|row| dot(row, &col)).collect();

        // lexicographic minimum of (x_B[i], B⁻¹[i, ..]) / u_i over u_i > 0
        let mut leave: Option<usize> = None;
        for i in (0..m).filter(|&i| u[i].is_positive()) {
            leave = Some(match leave {
                None => i,
                Some(l) => {
                    if lex_ratio_cmp(&xb, &binv, &u, i, l) == Ordering::Less {
                        i
                    } else {
                        l
                    }
                }
            });
        }
        // Phase one is bounded below by zero, so some u_i is positive.
        let l = leave.expect("phase-one objective is bounded");

        let piv = u[l].clone();
        let prow: Vec<Q> = binv[l].iter().map(|x| x / &piv).collect();
        let px = &xb[l] / &piv;
        for i in 0..m {
            if i == l || u[i].is_zero() {
                continue;
            }
            let f = u[i].clone();
            for (a, p) in binv[i].iter_mut().zip(&prow) {
                *a -= &f * p;
            }
            xb[i] -= &f * &px;
        }
        binv[l] = prow;
        xb[l] = px;
        basis[l] = BasicVar::Column(id);
    }
}

fn lex_ratio_cmp(xb: &[Q], binv: &[Vec<Q>], u: &[Q], i: usize, l: usize) -> Ordering {
    let key = |row: usize, k: usize| -> Q {
        let v = if k == 0 { &xb[row] } else { &binv[row][k - 1] };
        v / &u[row]
    };
    for k in 0..=binv.len() {
        match key(i, k).cmp(&key(l, k)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Oracle over an explicit generator list.
#[cfg(test)]
pub(crate) struct ExplicitColumns<'a>(pub &'a [Vec<Q>]);

#[cfg(test)]
impl ColumnOracle for ExplicitColumns<'_> {
    type Id = usize;

    fn improving_column(&self, y: &[Q]) -> Option<(usize, Vec<Q>)> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, g)| (i, dot(y, g)))
            .filter(|(_, v)| v.is_positive())
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(i, _)| (i, self.0[i].clone()))
    }
}
