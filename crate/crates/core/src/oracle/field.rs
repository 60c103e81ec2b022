use rand::Rng;

use crate::error::{Error, Result};

/// The prime field `F_p` for `2 <= p < 2^31`, elements stored as reduced `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
}

pub const DEFAULT_PRIME: u64 = 65537;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl FiniteField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::Prime(p, "must be below 2^31".into()));
        }
        if !is_prime(p) {
            return Err(Error::Prime(p, "not prime".into()));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    pub fn is_square(&self, a: u64) -> bool {
        let a = a % self.p;
        a == 0 || self.p == 2 || self.pow(a, (self.p - 1) / 2) == 1
    }

    /// A square root by Tonelli–Shanks.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 || p == 2 {
            return Some(a);
        }
        if !self.is_square(a) {
            return None;
        }
        let (mut q, mut s) = (p - 1, 0u32);
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| !self.is_square(z)).expect("nonresidue exists");
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    /// Rank of a dense matrix of reduced entries.
    ///
    /// Row updates are accumulated unreduced in `u64`; an entry is reduced only
    /// when it is inspected as a pivot candidate or when its row has absorbed as
    /// many updates as can be added without overflow.
    pub fn rank(&self, mut rows: Vec<Vec<u64>>) -> usize {
        let p = self.p;
        let ncols = rows.first().map_or(0, Vec::len);
        let step = (p - 1).max(1) * (p - 1).max(1);
        let limit = (u64::MAX - p) / step;
        let mut pending = vec![0u64; rows.len()];
        let mut active: Vec<usize> = (0..rows.len()).collect();
        let mut rank = 0;
        for c in 0..ncols {
            if active.is_empty() {
                break;
            }
            let Some(pos) = active.iter().position(|&i| rows[i][c] % p != 0) else {
                continue;
            };
            let pr = active.swap_remove(pos);
            let mut pivot = std::mem::take(&mut rows[pr]);
            let inv = self.inv(pivot[c] % p);
            for x in &mut pivot[c..] {
                *x = *x % p * inv % p;
            }
            rank += 1;
            for &i in &active {
                let e = rows[i][c] % p;
                if e == 0 {
                    continue;
                }
                let row = &mut rows[i];
                if pending[i] == limit {
                    for x in &mut row[c + 1..] {
                        *x %= p;
                    }
                    pending[i] = 0;
                }
                let f = p - e;
                for (x, y) in row[c + 1..].iter_mut().zip(&pivot[c + 1..]) {
                    *x += f * y;
                }
                row[c] = 0;
                pending[i] += 1;
            }
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_bad_primes() {
        assert!(FiniteField::new(65537).is_ok());
        assert!(FiniteField::new(65535).is_err());
        assert!(FiniteField::new(1).is_err());
        assert!(FiniteField::new(2147483659).is_err());
    }

    #[test]
    fn sqrt_and_inverse() {
        let f = FiniteField::new(65537).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = f.random(&mut rng);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            let s = f.mul(a, a);
            let r = f.sqrt(s).unwrap();
            assert_eq!(f.mul(r, r), s);
        }
        assert!(f.sqrt(3).is_none());
    }

    fn naive_rank(f: &FiniteField, mut m: Vec<Vec<u64>>) -> usize {
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = f.inv(m[rank][c]);
            for i in 0..m.len() {
                if i != rank && m[i][c] != 0 {
                    let k = f.mul(m[i][c], inv);
                    for j in 0..cols {
                        let t = f.mul(k, m[rank][j]);
                        m[i][j] = f.sub(m[i][j], t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn lazy_rank_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // a large prime forces frequent intermediate reductions
        for p in [2u64, 3, 65537, 2147483647] {
            let f = FiniteField::new(p).unwrap();
            for _ in 0..20 {
                let rows = rng.gen_range(1..12);
                let cols = rng.gen_range(1..12);
                let k = rng.gen_range(1..=rows.min(cols));
                // product of random rows x k and k x cols gives rank <= k
                let a: Vec<Vec<u64>> = (0..rows).map(|_| (0..k).map(|_| f.random(&mut rng)).collect()).collect();
                let b: Vec<Vec<u64>> = (0..k).map(|_| (0..cols).map(|_| f.random(&mut rng)).collect()).collect();
                let m: Vec<Vec<u64>> = a
                    .iter()
                    .map(|ar| {
                        (0..cols)
                            .map(|j| ar.iter().zip(&b).fold(0, |acc, (x, br)| f.add(acc, f.mul(*x, br[j]))))
                            .collect()
                    })
                    .collect();
                assert_eq!(f.rank(m.clone()), naive_rank(&f, m));
            }
        }
    }
}
