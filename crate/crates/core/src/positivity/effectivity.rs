//! Three-valued effectivity on `X^2_r` from Riemann–Roch, Weyl reduction and
//! the interpolation oracle.

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, RrVerdict};
use crate::oracle::{column_count, h0, h0_at, FiniteField, PointConfig, DEFAULT_PRIME};
use crate::weyl::{reduce, ReductionStatus};

/// Where the points are: very general, or a concrete configuration over `F_p`.
#[derive(Debug, Clone)]
pub enum PositionModel {
    VeryGeneral,
    Configuration(PointConfig),
}

#[derive(Debug, Clone)]
pub struct OracleBudget {
    pub field: FiniteField,
    pub seeds: Vec<u64>,
    /// Classes with more monomials than this are left undecided.
    pub max_columns: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            field: FiniteField::new(DEFAULT_PRIME).expect("default prime"),
            seeds: vec![1, 2, 3],
            max_columns: 5000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    NegativeDegree,
    /// Reduction reached a class of negative degree.
    ReducesToNegativeDegree(DivisorClass),
    /// `χ > 0` and `h² = 0` for this Weyl-equivalent class.
    RiemannRoch(DivisorClass),
    /// The reduced class is an effective class plus exceptional curves.
    ExceptionalTail { reduced: DivisorClass, positive_part: DivisorClass },
    /// Rank computation over `F_p`. A positive count at random points is evidence,
    /// not proof, of effectivity at very general points.
    Oracle { class: DivisorClass, p: u64, h0: i64 },
}

impl Certificate {
    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            Certificate::NegativeDegree => json!({"kind": "negativeDegree"}),
            Certificate::ReducesToNegativeDegree(c) => {
                json!({"kind": "reducesToNegativeDegree", "class": c.to_json_value()})
            }
            Certificate::RiemannRoch(c) => json!({"kind": "riemannRoch", "class": c.to_json_value()}),
            Certificate::ExceptionalTail { reduced, positive_part } => json!({
                "kind": "exceptionalTail",
                "reduced": reduced.to_json_value(),
                "positivePart": positive_part.to_json_value(),
            }),
            Certificate::Oracle { class, p, h0 } => {
                json!({"kind": "oracle", "class": class.to_json_value(), "p": p, "h0": h0})
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Effectivity {
    Effective(Certificate),
    NotEffective(Certificate),
    Unknown(String),
}

impl Effectivity {
    pub fn is_effective(&self) -> bool {
        matches!(self, Effectivity::Effective(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Effectivity::Unknown(_))
    }
}

fn rr(c: &DivisorClass) -> Result<bool> {
    Ok(c.rr_effective()? == RrVerdict::CertifiedEffective)
}

fn within_budget(c: &DivisorClass, budget: &OracleBudget) -> Result<bool> {
    Ok(column_count(c)?.to_u64().is_some_and(|n| n <= budget.max_columns))
}

/// Effectivity of an integer class on `X^2_r`.
pub fn effectivity_verdict(e: &DivisorClass, model: &PositionModel, budget: &OracleBudget) -> Result<Effectivity> {
    e.ctx().require_surface()?;
    if !e.is_integral() {
        return Err(Error::NonInteger(e.to_string()));
    }
    if e.degree().is_negative() {
        return Ok(Effectivity::NotEffective(Certificate::NegativeDegree));
    }
    match model {
        PositionModel::VeryGeneral => very_general(e, budget),
        PositionModel::Configuration(cfg) => at_configuration(e, cfg, budget),
    }
}

fn very_general(e: &DivisorClass, budget: &OracleBudget) -> Result<Effectivity> {
    let mut target = e.clone();
    let mut tail = false;
    if e.ctx().r() >= 3 {
        let report = reduce(e)?;
        match report.status {
            ReductionStatus::DegreeWentNegative => {
                return Ok(Effectivity::NotEffective(Certificate::ReducesToNegativeDegree(report.result)));
            }
            ReductionStatus::PseudostandardNegativeTail => tail = true,
            ReductionStatus::Standard => {}
        }
        target = report.result;
    } else if e.multiplicities().iter().any(Signed::is_negative) {
        tail = true;
    }
    if rr(&target)? {
        return Ok(Effectivity::Effective(Certificate::RiemannRoch(target)));
    }
    // h⁰ ignores E_i with negative multiplicity, so the positive part decides
    let positive = if tail {
        let m: Vec<_> = target.multiplicities().iter().map(|x| x.clone().max(Zero::zero())).collect();
        DivisorClass::new(target.ctx(), target.degree().clone(), m)?
    } else {
        target.clone()
    };
    if tail {
        if positive.is_zero() || rr(&positive)? {
            return Ok(Effectivity::Effective(Certificate::ExceptionalTail {
                reduced: target,
                positive_part: positive,
            }));
        }
    }
    if !within_budget(&positive, budget)? {
        return Ok(Effectivity::Unknown(format!("{positive} exceeds the oracle budget")));
    }
    let res = h0(&positive, budget.field, &budget.seeds)?;
    let cert = Certificate::Oracle { class: positive, p: res.p, h0: res.h0 };
    Ok(if res.h0 > 0 { Effectivity::Effective(cert) } else { Effectivity::NotEffective(cert) })
}

fn at_configuration(e: &DivisorClass, cfg: &PointConfig, budget: &OracleBudget) -> Result<Effectivity> {
    if rr(e)? {
        return Ok(Effectivity::Effective(Certificate::RiemannRoch(e.clone())));
    }
    if !within_budget(e, budget)? {
        return Ok(Effectivity::Unknown(format!("{e} exceeds the oracle budget")));
    }
    let res = h0_at(e, cfg)?;
    let cert = Certificate::Oracle { class: e.clone(), p: res.p, h0: res.h0 };
    Ok(if res.h0 > 0 { Effectivity::Effective(cert) } else { Effectivity::NotEffective(cert) })
}
