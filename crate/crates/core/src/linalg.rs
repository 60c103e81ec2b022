//! Exact rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{q, qfrac, qint, Q};

pub type Matrix = Vec<Vec<Q>>;

/// `A = L·diag(pivots)·Lᵀ` with `L` unit lower triangular.
#[derive(Debug, Clone)]
pub struct Ldl {
    pub lower: Matrix,
    pub pivots: Vec<Q>,
}

impl Ldl {
    /// Factorizes a symmetric matrix without pivoting. Returns `None` when a zero
    /// pivot shows up, which cannot happen for definite input.
    pub fn factor(a: &Matrix) -> Option<Self> {
        let n = a.len();
        let mut lower = vec![vec![Q::zero(); n]; n];
        let mut pivots = vec![Q::zero(); n];
        for j in 0..n {
            let mut dj = a[j][j].clone();
            for k in 0..j {
                dj -= &lower[j][k] * &lower[j][k] * &pivots[k];
            }
            if dj.is_zero() {
                return None;
            }
            lower[j][j] = Q::one();
            for i in j + 1..n {
                let mut s = a[i][j].clone();
                for k in 0..j {
                    s -= &lower[i][k] * &lower[j][k] * &pivots[k];
                }
                lower[i][j] = s / &dj;
            }
            pivots[j] = dj;
        }
        Some(Self { lower, pivots })
    }

    pub fn is_negative_definite(&self) -> bool {
        self.pivots.iter().all(Signed::is_negative)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.pivots.iter().all(Signed::is_positive)
    }

    pub fn solve(&self, b: &[Q]) -> Vec<Q> {
        let n = b.len();
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let t = &self.lower[i][k] * &y[k];
                y[i] -= t;
            }
        }
        for (yi, di) in y.iter_mut().zip(&self.pivots) {
            *yi /= di;
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let t = &self.lower[k][i] * &y[k];
                y[i] -= t;
            }
        }
        y
    }
}

pub fn negate(a: &Matrix) -> Matrix {
    a.iter().map(|row| row.iter().map(|x| -x).collect()).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn mat_vec(a: &Matrix, x: &[Q]) -> Vec<Q> {
    a.iter().map(|row| dot(row, x)).collect()
}

/// Basis of `{x ∈ ℤ^k : w·x = 0}` via unimodular column operations (extended gcd).
pub fn integer_kernel(w: &[BigInt]) -> Vec<Vec<BigInt>> {
    let k = w.len();
    let mut w = w.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let Some(p) = w.iter().position(|x| !x.is_zero()) else {
        return u;
    };
    for j in 0..k {
        if j == p || w[j].is_zero() {
            continue;
        }
        let e = w[p].extended_gcd(&w[j]);
        let (g, s, t) = (e.gcd, e.x, e.y);
        let (a, b) = (&w[j] / &g, &w[p] / &g);
        // columns p, j <- (s·col_p + t·col_j, a·col_p - b·col_j), determinant -1
        for row in u.iter_mut() {
            let cp = row[p].clone();
            let cj = row[j].clone();
            row[p] = &s * &cp + &t * &cj;
            row[j] = &a * &cp - &b * &cj;
        }
        w[p] = g;
        w[j] = BigInt::zero();
    }
    (0..k)
        .filter(|&j| j != p)
        .map(|j| u.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// LLL-reduces `basis` (δ = 3/4) for the positive definite form `inner`,
/// returning the reduced basis. Vectors are integer coordinate rows.
pub fn lll_reduce<F>(mut basis: Vec<Vec<BigInt>>, inner: F) -> Vec<Vec<BigInt>>
where
    F: Fn(&[BigInt], &[BigInt]) -> Q,
{
    let n = basis.len();
    if n <= 1 {
        return basis;
    }
    let delta = qfrac(3, 4);
    let gso = |basis: &[Vec<BigInt>]| -> (Matrix, Vec<Q>) {
        let n = basis.len();
        let mut mu = vec![vec![Q::zero(); n]; n];
        let mut bstar_sq = vec![Q::zero(); n];
        // b*_i = b_i - Σ mu_ij b*_j, computed through the Gram matrix
        let gram: Matrix = (0..n)
            .map(|i| (0..n).map(|j| inner(&basis[i], &basis[j])).collect())
            .collect();
        for i in 0..n {
            for j in 0..i {
                let mut s = gram[i][j].clone();
                for k in 0..j {
                    s -= &mu[j][k] * &mu[i][k] * &bstar_sq[k];
                }
                mu[i][j] = s / &bstar_sq[j];
            }
            let mut s = gram[i][i].clone();
            for k in 0..i {
                s -= &mu[i][k] * &mu[i][k] * &bstar_sq[k];
            }
            bstar_sq[i] = s;
        }
        (mu, bstar_sq)
    };
    let (mut mu, mut bstar_sq) = gso(&basis);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let r = mu[k][j].round();
            if !r.is_zero() {
                let r = r.to_integer();
                let bj = basis[j].clone();
                for (x, y) in basis[k].iter_mut().zip(&bj) {
                    *x -= &r * y;
                }
                let rq = qint(&r);
                for l in 0..=j {
                    let t = if l == j { rq.clone() } else { &rq * &mu[j][l] };
                    mu[k][l] -= t;
                }
            }
        }
        let lhs = &bstar_sq[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar_sq[k - 1];
        if lhs >= &rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            (mu, bstar_sq) = gso(&basis);
            k = (k - 1).max(1);
        }
    }
    basis
}

/// Solves a small nonsingular system exactly by Gaussian elimination.
pub fn solve(a: &Matrix, b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect()
}
