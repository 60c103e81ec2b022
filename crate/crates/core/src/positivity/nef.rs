//! Nef tests: the polyhedral description for `r < 2^n`, the dual generator
//! cone checked by exact linear programming, and a bounded screen on surfaces.

use num_traits::{Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::lattice::{BlowupContext, CurveClass, DivisorClass};
use crate::rational::{q, Q};
use crate::weyl::{orbit_representatives, OrbitReps};

use super::lp::{cone_membership, ColumnOracle, Membership};

fn require_regime(ctx: BlowupContext) -> Result<()> {
    let below = ctx.n() >= usize::BITS || ctx.r() < (1usize << ctx.n());
    if below {
        Ok(())
    } else {
        Err(Error::OutsideRegime { n: ctx.n(), r: ctx.r() })
    }
}

/// Generators of the cone of curves for `r < 2^n`: `e_k` and `h - e_i - e_j`.
/// For `r = 1` the line class is `h - e_1` and for `r = 0` it is `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoriGenerator {
    Exceptional(usize),
    Line(Vec<usize>),
}

impl MoriGenerator {
    pub fn all(ctx: BlowupContext) -> Vec<MoriGenerator> {
        let r = ctx.r();
        let mut out: Vec<_> = (0..r).map(MoriGenerator::Exceptional).collect();
        match r {
            0 => out.push(MoriGenerator::Line(vec![])),
            1 => out.push(MoriGenerator::Line(vec![0])),
            _ => {
                for i in 0..r {
                    for j in i + 1..r {
                        out.push(MoriGenerator::Line(vec![i, j]));
                    }
                }
            }
        }
        out
    }

    pub fn to_curve(&self, ctx: BlowupContext) -> CurveClass {
        match self {
            MoriGenerator::Exceptional(k) => CurveClass::exceptional(ctx, *k),
            MoriGenerator::Line(idx) => CurveClass::line_through(ctx, idx),
        }
    }
}

/// `m_k >= 0` for all `k` and `d >= m_i + m_j` for all `i < j`.
pub fn nef_test_pn(d: &DivisorClass) -> Result<bool> {
    let ctx = d.ctx();
    require_regime(ctx)?;
    let m = d.multiplicities();
    if m.iter().any(Signed::is_negative) {
        return Ok(false);
    }
    let deg = d.degree();
    Ok(match m.len() {
        0 => !deg.is_negative(),
        1 => deg >= &m[0],
        _ => {
            // the two largest multiplicities decide every pair inequality
            let mut top = m.to_vec();
            top.sort_by(|a, b| b.cmp(a));
            deg >= &(&top[0] + &top[1])
        }
    })
}

/// Generators `H`, `H - E_i`, `2H - Σ_{i∈I} E_i` of the nef cone for `r < 2^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NefGenerator {
    Hyperplane,
    HyperplaneMinus(usize),
    Quadric(Vec<usize>),
}

impl NefGenerator {
    pub fn to_divisor(&self, ctx: BlowupContext) -> DivisorClass {
        let mut v = vec![0i64; ctx.r() + 1];
        match self {
            NefGenerator::Hyperplane => v[0] = 1,
            NefGenerator::HyperplaneMinus(i) => {
                v[0] = 1;
                v[i + 1] = 1;
            }
            NefGenerator::Quadric(idx) => {
                v[0] = 2;
                for i in idx {
                    v[i + 1] = 1;
                }
            }
        }
        DivisorClass::from_i64s(ctx, &v)
    }
}

impl std::fmt::Display for NefGenerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NefGenerator::Hyperplane => write!(f, "H"),
            NefGenerator::HyperplaneMinus(i) => write!(f, "H-E{}", i + 1),
            NefGenerator::Quadric(idx) => {
                write!(f, "2H")?;
                for i in idx {
                    write!(f, "-E{}", i + 1)?;
                }
                Ok(())
            }
        }
    }
}

/// Prices all `2^r + r + 1` generators in `O(r)`: for a functional `y` on the
/// coefficient vector `(d, -m_1, ...)`, the best quadric takes `I = {i : y_i < 0}`.
struct NefColumns {
    r: usize,
}

impl NefColumns {
    fn column(&self, g: &NefGenerator) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.r + 1];
        match g {
            NefGenerator::Hyperplane => v[0] = q(1),
            NefGenerator::HyperplaneMinus(i) => {
                v[0] = q(1);
                v[i + 1] = q(-1);
            }
            NefGenerator::Quadric(idx) => {
                v[0] = q(2);
                for i in idx {
                    v[i + 1] = q(-1);
                }
            }
        }
        v
    }
}

impl ColumnOracle for NefColumns {
    type Id = NefGenerator;

    fn improving_column(&self, y: &[Q]) -> Option<(NefGenerator, Vec<Q>)> {
        let mut best = (NefGenerator::Hyperplane, y[0].clone());
        if let Some((i, yi)) = y[1..].iter().enumerate().min_by(|a, b| a.1.cmp(b.1)) {
            let val = &y[0] - yi;
            if val > best.1 {
                best = (NefGenerator::HyperplaneMinus(i), val);
            }
        }
        let idx: Vec<usize> = (0..self.r).filter(|&i| y[i + 1].is_negative()).collect();
        let val = q(2) * &y[0] - idx.iter().map(|&i| y[i + 1].clone()).sum::<Q>();
        if val > best.1 {
            best = (NefGenerator::Quadric(idx), val);
        }
        best.1.is_positive().then(|| {
            let col = self.column(&best.0);
            (best.0, col)
        })
    }
}

#[derive(Debug, Clone)]
pub enum DualMembership {
    InCone(Vec<(NefGenerator, Q)>),
    /// `farkas` pairs nonnegatively with every nef generator and negatively with
    /// the class; `witness` is a cone-of-curves generator pairing negatively.
    NotInCone {
        farkas: CurveClass,
        witness: Option<MoriGenerator>,
    },
}

impl DualMembership {
    pub fn is_in_cone(&self) -> bool {
        matches!(self, DualMembership::InCone(_))
    }
}

/// Decides whether `d` is a nonnegative combination of the nef generators.
pub fn nef_dual_membership(d: &DivisorClass) -> Result<DualMembership> {
    let ctx = d.ctx();
    require_regime(ctx)?;
    let oracle = NefColumns { r: ctx.r() };
    Ok(match cone_membership(&oracle, &d.coefficients()) {
        Membership::Member(combo) => DualMembership::InCone(combo),
        Membership::Separated(y) => {
            let z: Vec<Q> = y.iter().map(|x| -x).collect();
            let farkas = CurveClass::from_functional(ctx, &z);
            let witness = MoriGenerator::all(ctx).into_iter().find(|g| {
                d.pair_curve(&g.to_curve(ctx)).is_ok_and(|p| p.is_negative())
            });
            DualMembership::NotInCone { farkas, witness }
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NefWitness {
    /// `D·E_i = m_i < 0`.
    Exceptional(usize),
    /// A `(-1)`-class pairing negatively with `D`.
    MinusOneCurve(DivisorClass),
    /// `D² < 0` or `D·H < 0`.
    OutsidePositiveCone,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NefScreen {
    NefUpToBound { bound: i64 },
    NotNef { bound: i64, witness: NefWitness },
}

impl NefScreen {
    pub fn passed(&self) -> bool {
        matches!(self, NefScreen::NefUpToBound { .. })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            NefScreen::NefUpToBound { bound } => json!({"tag": "NefUpToBound", "bound": bound}),
            NefScreen::NotNef { bound, witness } => {
                let w = match witness {
                    NefWitness::Exceptional(i) => json!({"exceptional": i + 1}),
                    NefWitness::MinusOneCurve(c) => json!({"curve": c.to_json_value()}),
                    NefWitness::OutsidePositiveCone => json!("outsidePositiveCone"),
                };
                json!({"tag": "NotNef", "bound": bound, "witness": w})
            }
        }
    }
}

/// Semi-decision for nefness on `X^2_r`: pairings with `E_i`, with every
/// `(-1)`-class of degree `<= bound`, and membership in the positive cone.
pub fn nef_test_surface(d: &DivisorClass, bound: i64) -> Result<NefScreen> {
    let reps = orbit_representatives(d.ctx(), bound)?;
    nef_test_surface_with(d, &reps)
}

pub fn nef_test_surface_with(d: &DivisorClass, reps: &OrbitReps) -> Result<NefScreen> {
    d.ctx().require_surface()?;
    d.ctx().require_same(&reps.ctx)?;
    let bound = reps.bound;
    if let Some(i) = d.multiplicities().iter().position(Signed::is_negative) {
        return Ok(NefScreen::NotNef { bound, witness: NefWitness::Exceptional(i) });
    }
    if let Some((p, c)) = reps.min_pairing(d) {
        if p.is_negative() {
            return Ok(NefScreen::NotNef { bound, witness: NefWitness::MinusOneCurve(c) });
        }
    }
    if !d.in_positive_cone()? {
        return Ok(NefScreen::NotNef { bound, witness: NefWitness::OutsidePositiveCone });
    }
    Ok(NefScreen::NefUpToBound { bound })
}
