//! The Weyl group of `X^2_r`: reflections in the fundamental roots
//! `E_1 - E_2, ..., E_{r-1} - E_r, H - E_1 - E_2 - E_3`, reduction to
//! (pseudo)standard form, and classifiers built on top of it.

mod orbit;

pub use orbit::{minus_one_classes_by_scan, orbit_enumerate, orbit_representatives, OrbitCache, OrbitReps};

use serde::Serialize;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{canonical_class, BlowupContext, DivisorClass};
use crate::linalg::{Ldl, Matrix};
use crate::rational::{gcd_of_integers, lcm_of_denominators, q, qint, Q};

/// A class with `R² = -2` and `R·K = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root(DivisorClass);

impl Root {
    pub fn new(class: DivisorClass) -> Result<Self> {
        let sq = class.self_intersection()?;
        let rk = class.pair(&canonical_class(class.ctx()))?;
        if sq != q(-2) || !rk.is_zero() {
            return Err(Error::Precondition(format!("{class} is not a root")));
        }
        Ok(Self(class))
    }

    pub fn class(&self) -> &DivisorClass {
        &self.0
    }
}

/// One of the simple reflections. `Swap(i)` is the root `E_{i+1} - E_{i+2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SimpleReflection {
    Swap(usize),
    Cremona,
}

impl SimpleReflection {
    pub fn root(&self, ctx: BlowupContext) -> Result<Root> {
        let mut v = vec![0i64; ctx.r() + 1];
        match *self {
            SimpleReflection::Swap(i) => {
                if i + 1 >= ctx.r() {
                    return Err(Error::Precondition(format!("no root E{}-E{}", i + 1, i + 2)));
                }
                v[i + 1] = -1;
                v[i + 2] = 1;
            }
            SimpleReflection::Cremona => {
                if ctx.r() < 3 {
                    return Err(Error::Precondition("Cremona root needs r >= 3".into()));
                }
                v[0] = 1;
                v[1..4].fill(1);
            }
        }
        Root::new(DivisorClass::from_i64s(ctx, &v))
    }

    /// Applies the reflection to integer coordinates `[d, m_1, ..., m_r]` in place.
    pub fn apply(&self, v: &mut [i64]) {
        match *self {
            SimpleReflection::Swap(i) => v.swap(i + 1, i + 2),
            SimpleReflection::Cremona => cremona_at(v, 1, 2, 3),
        }
    }
}

/// Reflection in `H - E_i - E_j - E_k`, indices into `[d, m_1, ...]`.
pub(crate) fn cremona_at(v: &mut [i64], i: usize, j: usize, k: usize) {
    let t = v[0] - v[i] - v[j] - v[k];
    v[0] += t;
    v[i] += t;
    v[j] += t;
    v[k] += t;
}

#[derive(Debug, Clone)]
pub struct FundamentalRoots {
    pub roots: Vec<Root>,
    /// Set when `r < 3`, where only the difference roots exist.
    pub cremona_missing: bool,
}

pub fn fundamental_roots(ctx: BlowupContext) -> Result<FundamentalRoots> {
    ctx.require_surface()?;
    let mut roots = (0..ctx.r().saturating_sub(1))
        .map(|i| SimpleReflection::Swap(i).root(ctx))
        .collect::<Result<Vec<_>>>()?;
    let cremona_missing = ctx.r() < 3;
    if !cremona_missing {
        roots.push(SimpleReflection::Cremona.root(ctx)?);
    }
    Ok(FundamentalRoots { roots, cremona_missing })
}

/// `D + (D·R) R`.
pub fn reflect(d: &DivisorClass, root: &Root) -> Result<DivisorClass> {
    let t = d.pair(root.class())?;
    Ok(d + &root.class().scale(&t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReductionStatus {
    Standard,
    PseudostandardNegativeTail,
    DegreeWentNegative,
}

#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub input: DivisorClass,
    pub trace: Vec<SimpleReflection>,
    pub result: DivisorClass,
    pub status: ReductionStatus,
}

impl ReductionReport {
    /// Re-applies the trace to the input through the generic reflection formula.
    pub fn replay(&self) -> Result<DivisorClass> {
        let ctx = self.input.ctx();
        let mut c = self.input.clone();
        for s in &self.trace {
            c = reflect(&c, &s.root(ctx)?)?;
        }
        Ok(c)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "input": self.input.to_json_value(),
            "result": self.result.to_json_value(),
            "status": self.status,
            "trace": self.trace.iter().map(|s| match s {
                SimpleReflection::Swap(i) => format!("E{}-E{}", i + 1, i + 2),
                SimpleReflection::Cremona => "H-E1-E2-E3".to_string(),
            }).collect::<Vec<_>>(),
        })
    }
}

/// Whether `[d, m_1, ..., m_r]` satisfies `d >= m_1+m_2+m_3` and `m_1 >= ... >= m_r`
/// (missing multiplicities count as zero).
pub(crate) fn is_pseudostandard(v: &[i64]) -> bool {
    let m = &v[1..];
    let top: i64 = m.iter().take(3).sum();
    v[0] >= top && m.windows(2).all(|w| w[0] >= w[1])
}

/// Core of [`reduce`] on integer coordinates.
pub(crate) fn reduce_ints(v: &mut [i64], trace: &mut Vec<SimpleReflection>) -> ReductionStatus {
    let r = v.len() - 1;
    loop {
        if v[0] < 0 {
            return ReductionStatus::DegreeWentNegative;
        }
        // stable bubble sort, descending
        let mut swapped = true;
        while swapped {
            swapped = false;
            for i in 0..r.saturating_sub(1) {
                if v[i + 1] < v[i + 2] {
                    v.swap(i + 1, i + 2);
                    trace.push(SimpleReflection::Swap(i));
                    swapped = true;
                }
            }
        }
        if is_pseudostandard(v) {
            return if v[r] >= 0 {
                ReductionStatus::Standard
            } else {
                ReductionStatus::PseudostandardNegativeTail
            };
        }
        cremona_at(v, 1, 2, 3);
        trace.push(SimpleReflection::Cremona);
    }
}

/// Reduces an integer class to pseudostandard form by sorting and Cremona steps.
/// Each Cremona step strictly lowers the degree, so the loop terminates.
pub fn reduce(d: &DivisorClass) -> Result<ReductionReport> {
    d.ctx().require_surface()?;
    if d.ctx().r() < 3 {
        return Err(Error::Precondition("reduction needs r >= 3".into()));
    }
    let mut v = d.to_i64s()?;
    let mut trace = Vec::new();
    let status = reduce_ints(&mut v, &mut trace);
    Ok(ReductionReport {
        input: d.clone(),
        trace,
        result: DivisorClass::from_i64s(d.ctx(), &v),
        status,
    })
}

/// Integer coordinates padded with zeros up to `r = 3`, for the low-`r` cases.
pub(crate) fn padded(v: &[i64]) -> Vec<i64> {
    let mut w = v.to_vec();
    while w.len() < 4 {
        w.push(0);
    }
    w
}

pub(crate) fn is_minus_one_ints(v: &[i64]) -> bool {
    let sq = v[0] * v[0] - v[1..].iter().map(|x| x * x).sum::<i64>();
    let dk = -3 * v[0] + v[1..].iter().sum::<i64>();
    if sq != -1 || dk != -1 {
        return false;
    }
    let mut w = padded(v);
    let mut trace = Vec::new();
    if reduce_ints(&mut w, &mut trace) != ReductionStatus::PseudostandardNegativeTail {
        return false;
    }
    let r = w.len() - 1;
    w[0] == 0 && w[r] == -1 && w[1..r].iter().all(|&x| x == 0)
}

/// `D² = D·K = -1` and `D` reduces to an exceptional class. For `r < 3` the class
/// is viewed on `X^2_3` with the extra multiplicities zero.
pub fn is_minus_one_class(d: &DivisorClass) -> Result<bool> {
    d.ctx().require_surface()?;
    match d.to_i64s() {
        Ok(v) => Ok(is_minus_one_ints(&v)),
        Err(_) => Ok(false),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StdClassification {
    MultipleOfHminusE1,
    MultipleOfMinusK9,
    Counterexample,
}

pub(crate) fn classify_standard_ints(v: &[i64]) -> StdClassification {
    let (d, m) = (v[0], &v[1..]);
    if d > 0 && !m.is_empty() && m[0] == d && m[1..].iter().all(|&x| x == 0) {
        return StdClassification::MultipleOfHminusE1;
    }
    if m.len() >= 9 {
        let k = m[0];
        if k > 0 && d == 3 * k && m[..9].iter().all(|&x| x == k) && m[9..].iter().all(|&x| x == 0) {
            return StdClassification::MultipleOfMinusK9;
        }
    }
    StdClassification::Counterexample
}

/// Classifies a nonzero standard class with `D² <= 0` and `D·K <= 0`: it must be a
/// positive multiple of `H - E_1` or of `-K_9`.
pub fn lemma_std_check(d: &DivisorClass) -> Result<StdClassification> {
    let ctx = d.ctx();
    ctx.require_surface()?;
    let m = d.multiplicities();
    let top: Q = m.iter().take(3).sum();
    let sorted = m.windows(2).all(|w| w[0] >= w[1]);
    let standard = d.degree() >= &top && sorted && m.last().is_none_or(|x| !x.is_negative());
    if !standard {
        return Err(Error::Precondition(format!("{d} is not standard")));
    }
    if d.is_zero() {
        return Err(Error::Precondition("zero class".into()));
    }
    if d.self_intersection()?.is_positive() || d.pair(&canonical_class(ctx))?.is_positive() {
        return Err(Error::Precondition(format!("{d} needs D² <= 0 and D·K <= 0")));
    }
    // the classification is scale invariant
    let (_, scaled) = d.clear_denominators();
    Ok(classify_standard_ints(&scaled.to_i64s()?))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StdSweep {
    pub checked: u64,
    pub counterexamples: Vec<Vec<i64>>,
}

/// Every nonzero integer standard class on `X^2_r`, `r <= max_r`, `0 <= d <= max_d`,
/// with `D² <= 0` and `D·K <= 0`, run through the classification.
pub fn lemma_std_sweep(max_r: usize, max_d: i64) -> StdSweep {
    fn rec(v: &mut Vec<i64>, r: usize, out: &mut StdSweep) {
        let d = v[0];
        if v.len() == r + 1 {
            let sq = d * d - v[1..].iter().map(|x| x * x).sum::<i64>();
            let dk = -3 * d + v[1..].iter().sum::<i64>();
            if sq <= 0 && dk <= 0 && v.iter().any(|&x| x != 0) {
                out.checked += 1;
                if classify_standard_ints(v) == StdClassification::Counterexample {
                    out.counterexamples.push(v.clone());
                }
            }
            return;
        }
        let k = v.len() - 1;
        let cap = if k == 0 { d } else { v[k] };
        let used: i64 = v[1..].iter().take(3).sum();
        let cap = if k < 3 { cap.min(d - used) } else { cap };
        for m in 0..=cap {
            v.push(m);
            rec(v, r, out);
            v.pop();
        }
    }
    let mut out = StdSweep::default();
    for r in 0..=max_r {
        for d in 0..=max_d {
            rec(&mut vec![d], r, &mut out);
        }
    }
    out
}

/// Gram matrix of the pairing on a list of surface classes.
pub fn gram_matrix(classes: &[DivisorClass]) -> Result<Matrix> {
    classes
        .iter()
        .map(|a| classes.iter().map(|b| a.pair(b)).collect())
        .collect()
}

/// For classes with negative definite Gram matrix, the combination
/// `E = Σ a_i C_i` with `E·C_i < 0` for all `i`, from `Gram·a = -𝟙` with
/// denominators cleared.
pub fn blocking_divisor(curves: &[DivisorClass]) -> Result<DivisorClass> {
    let first = curves
        .first()
        .ok_or_else(|| Error::Precondition("no curves given".into()))?;
    let ctx = first.ctx();
    let gram = gram_matrix(curves)?;
    let ldl = Ldl::factor(&gram).ok_or(Error::NotNegativeDefinite)?;
    if !ldl.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let a = ldl.solve(&vec![-Q::one(); curves.len()]);
    let l = qint(&lcm_of_denominators(&a));
    let ints: Vec<_> = a.iter().map(|x| (x * &l).to_integer()).collect();
    let g = qint(&gcd_of_integers(&ints));
    let coeffs: Vec<Q> = ints.iter().map(|x| qint(x) / &g).collect();
    if coeffs.iter().any(|x| !x.is_positive()) {
        return Err(Error::Precondition(
            "blocking combination has non-positive coefficients".into(),
        ));
    }
    Ok(curves
        .iter()
        .zip(&coeffs)
        .fold(DivisorClass::zero(ctx), |acc, (c, a)| &acc + &c.scale(a)))
}
