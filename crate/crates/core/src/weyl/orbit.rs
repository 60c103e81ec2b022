//! The orbit of `E_r` under the Weyl group, i.e. the `(-1)`-classes, truncated by degree.

use std::collections::{BTreeSet, VecDeque};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde_json::json;

use crate::error::{Error, Result};
use crate::lattice::{BlowupContext, DivisorClass};
use crate::rational::{q, Q};

use super::cremona_at;

/// Sorted (descending multiplicities) representatives of the `(-1)`-classes of
/// degree at most `bound`. The full set is closed under permuting the `E_i`.
#[derive(Debug, Clone)]
pub struct OrbitReps {
    pub ctx: BlowupContext,
    pub bound: i64,
    pub reps: Vec<Vec<i64>>,
}

fn sort_desc(v: &mut [i64]) {
    v[1..].sort_unstable_by(|a, b| b.cmp(a));
}

fn reps_for_r_at_least_3(r: usize, bound: i64) -> BTreeSet<Vec<i64>> {
    let mut start = vec![0i64; r + 1];
    start[r] = -1;
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let mut tried = BTreeSet::new();
        for i in 1..=r {
            for j in i + 1..=r {
                for k in j + 1..=r {
                    if !tried.insert((v[i], v[j], v[k])) {
                        continue;
                    }
                    let mut w = v.clone();
                    cremona_at(&mut w, i, j, k);
                    if w[0] < 0 || w[0] > bound {
                        continue;
                    }
                    sort_desc(&mut w);
                    if seen.insert(w.clone()) {
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    seen
}

/// Representatives by breadth-first search over sorted classes: permutations are
/// folded into the sort, so only conjugates of the Cremona root are applied.
/// For `r < 3` the classes are read off `X^2_3` as those with `3 - r` zero multiplicities.
pub fn orbit_representatives(ctx: BlowupContext, bound: i64) -> Result<OrbitReps> {
    ctx.require_surface()?;
    let r = ctx.r();
    let reps = if r >= 3 {
        reps_for_r_at_least_3(r, bound)
    } else {
        let drop = 3 - r;
        reps_for_r_at_least_3(3, bound)
            .into_iter()
            .filter_map(|v| {
                let zeros = v[1..].iter().filter(|&&x| x == 0).count();
                (zeros >= drop).then(|| {
                    let mut out = vec![v[0]];
                    let mut skipped = 0;
                    for &x in &v[1..] {
                        if x == 0 && skipped < drop {
                            skipped += 1;
                        } else {
                            out.push(x);
                        }
                    }
                    out
                })
            })
            .collect()
    };
    Ok(OrbitReps { ctx, bound, reps: reps.into_iter().collect() })
}

/// Next lexicographic permutation; `false` once the sequence is non-increasing.
fn next_permutation(xs: &mut [i64]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).expect("pivot exists");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

impl OrbitReps {
    /// Every class, i.e. all distinct permutations of every representative,
    /// in ascending `(d, m_1, ..., m_r)` order.
    pub fn expand(&self) -> Vec<Vec<i64>> {
        let mut out = BTreeSet::new();
        for rep in &self.reps {
            let mut m = rep[1..].to_vec();
            m.sort_unstable();
            loop {
                let mut v = vec![rep[0]];
                v.extend_from_slice(&m);
                out.insert(v);
                if !next_permutation(&mut m) {
                    break;
                }
            }
        }
        out.into_iter().collect()
    }

    /// The most negative pairing of `d` with any orbit class, with that class.
    ///
    /// By the rearrangement inequality the minimum of `d·c - Σ m_i μ_σ(i)` over
    /// permutations pairs both multiplicity lists in descending order.
    pub fn min_pairing(&self, d: &DivisorClass) -> Option<(Q, DivisorClass)> {
        let m = d.multiplicities();
        let mut order: Vec<usize> = (0..m.len()).collect();
        order.sort_by(|&a, &b| m[b].cmp(&m[a]));
        let mut best: Option<(Q, &Vec<i64>)> = None;
        for rep in &self.reps {
            let mut p = d.degree() * q(rep[0]);
            for (slot, &idx) in order.iter().enumerate() {
                p -= &m[idx] * q(rep[slot + 1]);
            }
            if best.as_ref().is_none_or(|(b, _)| &p < b) {
                best = Some((p, rep));
            }
        }
        best.map(|(p, rep)| {
            let mut v = vec![0i64; m.len() + 1];
            v[0] = rep[0];
            for (slot, &idx) in order.iter().enumerate() {
                v[idx + 1] = rep[slot + 1];
            }
            (p, DivisorClass::from_i64s(self.ctx, &v))
        })
    }
}

/// All `(-1)`-classes of degree `<= bound`, deduplicated, in a fixed order.
pub fn orbit_enumerate(ctx: BlowupContext, bound: i64) -> Result<Vec<DivisorClass>> {
    let reps = orbit_representatives(ctx, bound)?;
    Ok(reps
        .expand()
        .iter()
        .map(|v| DivisorClass::from_i64s(ctx, v))
        .collect())
}

/// The same set by direct search: integer solutions of `Σm_i² = d² + 1`,
/// `Σm_i = 3d - 1` for `0 <= d <= bound`, kept when they reduce to some `E_i`.
pub fn minus_one_classes_by_scan(ctx: BlowupContext, bound: i64) -> Result<Vec<DivisorClass>> {
    ctx.require_surface()?;
    fn rec(v: &mut Vec<i64>, r: usize, sq_left: i64, sum_left: i64, out: &mut Vec<Vec<i64>>) {
        let k = v.len() - 1;
        if k == r {
            if sq_left == 0 && sum_left == 0 && super::is_minus_one_ints(v) {
                out.push(v.clone());
            }
            return;
        }
        // Cauchy–Schwarz on the remaining coordinates
        let rest = (r - k) as i64;
        if sum_left * sum_left > rest * sq_left {
            return;
        }
        let lim = (sq_left as f64).sqrt() as i64 + 1;
        for m in -lim..=lim {
            if m * m <= sq_left {
                v.push(m);
                rec(v, r, sq_left - m * m, sum_left - m, out);
                v.pop();
            }
        }
    }
    let mut out = Vec::new();
    for d in 0..=bound {
        rec(&mut vec![d], ctx.r(), d * d + 1, 3 * d - 1, &mut out);
    }
    out.sort();
    Ok(out.iter().map(|v| DivisorClass::from_i64s(ctx, v)).collect())
}

/// JSON-lines cache of orbit enumerations keyed by `(n, r, bound)`.
#[derive(Debug, Clone)]
pub struct OrbitCache {
    dir: PathBuf,
}

impl OrbitCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn path_for(&self, ctx: BlowupContext, bound: i64) -> PathBuf {
        self.dir
            .join(format!("orbit_n{}_r{}_b{}.jsonl", ctx.n(), ctx.r(), bound))
    }

    fn header(ctx: BlowupContext, bound: i64) -> serde_json::Value {
        json!({"bound": bound, "ctx": {"n": ctx.n(), "r": ctx.r()}})
    }

    /// Reads the cache file if present and well formed.
    pub fn load(&self, ctx: BlowupContext, bound: i64) -> Result<Option<Vec<DivisorClass>>> {
        let path = self.path_for(ctx, bound);
        if !path.exists() {
            return Ok(None);
        }
        let mut lines = BufReader::new(fs::File::open(&path)?).lines();
        let Some(first) = lines.next() else {
            return Ok(None);
        };
        let header: serde_json::Value = serde_json::from_str(&first?)?;
        if header != Self::header(ctx, bound) {
            return Ok(None);
        }
        let mut out = Vec::new();
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let c = DivisorClass::parse_json(&line)?;
            if c.ctx() != ctx {
                return Err(Error::Parse(format!("cache entry from {} in {}", c.ctx(), path.display())));
            }
            out.push(c);
        }
        Ok(Some(out))
    }

    /// Writes through a temporary file in the cache directory and renames it into place.
    pub fn store(&self, ctx: BlowupContext, bound: i64, classes: &[DivisorClass]) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(ctx, bound);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        writeln!(tmp, "{}", Self::header(ctx, bound))?;
        for c in classes {
            writeln!(tmp, "{}", serde_json::to_string(&c.to_json())?)?;
        }
        tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
        Ok(path)
    }

    pub fn load_or_generate(&self, ctx: BlowupContext, bound: i64) -> Result<Vec<DivisorClass>> {
        if let Some(c) = self.load(ctx, bound)? {
            return Ok(c);
        }
        let classes = orbit_enumerate(ctx, bound)?;
        self.store(ctx, bound, &classes)?;
        Ok(classes)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::canonical_class;

    #[test]
    fn three_points_degree_one() {
        let ctx = BlowupContext::surface(3);
        let got = orbit_enumerate(ctx, 1).unwrap();
        let want: std::collections::HashSet<_> = [
            [0, -1, 0, 0],
            [0, 0, -1, 0],
            [0, 0, 0, -1],
            [1, 1, 1, 0],
            [1, 1, 0, 1],
            [1, 0, 1, 1],
        ]
        .iter()
        .map(|v| DivisorClass::from_i64s(ctx, v))
        .collect();
        assert_eq!(got.len(), 6);
        assert_eq!(got.into_iter().collect::<std::collections::HashSet<_>>(), want);
    }

    #[test]
    fn nine_points_contains_cubic() {
        let ctx = BlowupContext::surface(9);
        let got = orbit_enumerate(ctx, 3).unwrap();
        let cubic = DivisorClass::from_ints(ctx, 3, &[2, 1, 1, 1, 1, 1, 1, 0, 0]);
        assert!(got.contains(&cubic));
        let k = canonical_class(ctx);
        for c in &got {
            assert_eq!(c.self_intersection().unwrap(), q(-1));
            assert_eq!(c.pair(&k).unwrap(), q(-1));
        }
    }

    #[test]
    fn low_r_orbits() {
        let two = orbit_enumerate(BlowupContext::surface(2), 4).unwrap();
        assert_eq!(two.len(), 3);
        assert!(two.contains(&DivisorClass::from_ints(BlowupContext::surface(2), 1, &[1, 1])));
        assert_eq!(orbit_enumerate(BlowupContext::surface(1), 4).unwrap().len(), 1);
        assert!(orbit_enumerate(BlowupContext::surface(0), 4).unwrap().is_empty());
    }

    #[test]
    fn min_pairing_finds_line() {
        let ctx = BlowupContext::surface(4);
        let reps = orbit_representatives(ctx, 2).unwrap();
        let d = DivisorClass::from_ints(ctx, 1, &[0, 1, 0, 1]);
        let (p, w) = reps.min_pairing(&d).unwrap();
        assert_eq!(p, q(-1));
        assert_eq!(w, DivisorClass::from_ints(ctx, 1, &[0, 1, 0, 1]));
    }

    #[test]
    fn scan_matches_search() {
        for r in 0..=8 {
            let ctx = BlowupContext::surface(r);
            assert_eq!(orbit_enumerate(ctx, 4).unwrap(), minus_one_classes_by_scan(ctx, 4).unwrap(), "r = {r}");
        }
    }

    #[test]
    fn cache_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = OrbitCache::new(dir.path());
        let ctx = BlowupContext::surface(5);
        assert!(cache.load(ctx, 2).unwrap().is_none());
        let a = cache.load_or_generate(ctx, 2).unwrap();
        let b = cache.load(ctx, 2).unwrap().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, orbit_enumerate(ctx, 2).unwrap());
    }
}
