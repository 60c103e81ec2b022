//! Asymptotic speciality of nef and big classes on `X^2_r` from the arithmetic
//! genus of effective classes in `D^⊥`.

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::lattice::DivisorClass;
use crate::rational::{format_q, Q};

use super::effectivity::{effectivity_verdict, Effectivity, OracleBudget, PositionModel};
use super::nef::nef_test_surface;
use super::perp::{pa_perp_candidates, pa_perp_upper};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialityTag {
    AsymptoticallyNonSpecial,
    AsymptoticallySpecial,
    Indeterminate,
    Unknown,
}

impl SpecialityTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpecialityTag::AsymptoticallyNonSpecial => "AsymptoticallyNonSpecial",
            SpecialityTag::AsymptoticallySpecial => "AsymptoticallySpecial",
            SpecialityTag::Indeterminate => "Indeterminate",
            SpecialityTag::Unknown => "Unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PaPerpVerdict {
    Zero,
    One,
    AtLeastTwo,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct PaPerpReport {
    /// Largest genus of a certified effective class in `D^⊥` (0 if none).
    pub lower: i64,
    pub upper: Q,
    /// Effective classes in `D^⊥` with genus `lower`.
    pub witnesses: Vec<DivisorClass>,
    /// Candidates whose effectivity could not be settled.
    pub undecided: Vec<DivisorClass>,
    pub verdict: PaPerpVerdict,
}

#[derive(Debug, Clone)]
pub struct SpecialityVerdict {
    pub tag: SpecialityTag,
    pub evidence: PaPerpReport,
    pub bound: i64,
}

impl SpecialityVerdict {
    pub fn to_json_value(&self) -> serde_json::Value {
        let e = &self.evidence;
        let verdict = match e.verdict {
            PaPerpVerdict::Zero => "Zero",
            PaPerpVerdict::One => "One",
            PaPerpVerdict::AtLeastTwo => "AtLeastTwo",
            PaPerpVerdict::Unknown => "Unknown",
        };
        json!({
            "tag": self.tag.as_str(),
            "paPerp": {
                "lower": e.lower,
                "upper": format_q(&e.upper),
                "witnesses": e.witnesses.iter().map(DivisorClass::to_json_value).collect::<Vec<_>>(),
                "undecided": e.undecided.iter().map(DivisorClass::to_json_value).collect::<Vec<_>>(),
                "verdict": verdict,
            },
            "bound": self.bound,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// Degree bound of the `(-1)`-classes used by the nef screen.
    pub orbit_bound: i64,
    /// Smallest genus enumerated in `D^⊥`. Above 1, genus-one classes are not
    /// examined and a verdict that would depend on them is `Unknown`.
    pub genus_threshold: i64,
    pub model: PositionModel,
    pub budget: OracleBudget,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            orbit_bound: 10,
            genus_threshold: 1,
            model: PositionModel::VeryGeneral,
            budget: OracleBudget::default(),
        }
    }
}

fn genus(x: &DivisorClass) -> i64 {
    x.arithmetic_genus()
        .ok()
        .and_then(|g| g.to_integer().to_i64())
        .expect("integer surface class")
}

/// Genus `>= 2` effective class in `D^⊥`: special. Only genus-one effective
/// classes: indeterminate (their disjointness from curves in `D^⊥` is not a
/// lattice condition). None: non-special.
pub fn classify_asymptotic(d: &DivisorClass, opts: &ClassifyOptions) -> Result<SpecialityVerdict> {
    d.ctx().require_surface()?;
    if !d.self_intersection()?.is_positive() {
        return Err(Error::Precondition(format!("{d} does not have positive square")));
    }
    let screen = nef_test_surface(d, opts.orbit_bound)?;
    if !screen.passed() {
        return Err(Error::Precondition(format!("{d} fails the nef screen at bound {}", opts.orbit_bound)));
    }
    let upper = pa_perp_upper(d)?;
    let t = opts.genus_threshold.max(1);
    // highest genus first, so the first effective class realizes the certified maximum
    let mut high = pa_perp_candidates(d, t.max(2))?;
    high.sort_by_cached_key(|x| std::cmp::Reverse(genus(x)));

    let mut undecided = Vec::new();
    let report = |tag, lower, witnesses, undecided: Vec<DivisorClass>, verdict| SpecialityVerdict {
        tag,
        evidence: PaPerpReport { lower, upper: upper.clone(), witnesses, undecided, verdict },
        bound: opts.orbit_bound,
    };

    for x in &high {
        match effectivity_verdict(x, &opts.model, &opts.budget)? {
            Effectivity::Effective(_) => {
                let g = genus(x);
                return Ok(report(
                    SpecialityTag::AsymptoticallySpecial,
                    g,
                    vec![x.clone()],
                    undecided,
                    PaPerpVerdict::AtLeastTwo,
                ));
            }
            Effectivity::Unknown(_) => undecided.push(x.clone()),
            Effectivity::NotEffective(_) => {}
        }
    }
    let high_undecided = !undecided.is_empty();
    if t >= 2 {
        return Ok(report(SpecialityTag::Unknown, 0, Vec::new(), undecided, PaPerpVerdict::Unknown));
    }
    let one: Vec<_> = pa_perp_candidates(d, 1)?.into_iter().filter(|x| genus(x) == 1).collect();
    let mut effective_one = Vec::new();
    for x in &one {
        match effectivity_verdict(x, &opts.model, &opts.budget)? {
            Effectivity::Effective(_) => effective_one.push(x.clone()),
            Effectivity::Unknown(_) => undecided.push(x.clone()),
            Effectivity::NotEffective(_) => {}
        }
    }
    Ok(if !effective_one.is_empty() {
        if high_undecided {
            report(SpecialityTag::Unknown, 1, effective_one, undecided, PaPerpVerdict::Unknown)
        } else {
            report(SpecialityTag::Indeterminate, 1, effective_one, undecided, PaPerpVerdict::One)
        }
    } else if !undecided.is_empty() {
        report(SpecialityTag::Unknown, 0, Vec::new(), undecided, PaPerpVerdict::Unknown)
    } else {
        report(SpecialityTag::AsymptoticallyNonSpecial, 0, Vec::new(), undecided, PaPerpVerdict::Zero)
    })
}

/// A nef-up-to-bound class vanishing on `C`: the projection of
/// `A = (r+1)H - ΣE_i` to `C^⊥`, namely `(-C²)A + (A·C)C`, made primitive.
pub fn corollary_spe_witness(c: &DivisorClass, orbit_bound: i64) -> Result<DivisorClass> {
    let ctx = c.ctx();
    ctx.require_surface()?;
    if !c.is_integral() {
        return Err(Error::NonInteger(c.to_string()));
    }
    let c2 = c.self_intersection()?;
    if !c2.is_negative() {
        return Err(Error::Precondition(format!("{c} has C² = {} >= 0", format_q(&c2))));
    }
    let pa = c.arithmetic_genus()?;
    if pa <= Q::from_integer(1.into()) {
        return Err(Error::Precondition(format!("{c} has p_a = {} <= 1", format_q(&pa))));
    }
    let r = ctx.r() as i64;
    let a = DivisorClass::uniform(ctx, r + 1, 1, ctx.r());
    let ac = a.pair(c)?;
    let raw = &a.scale(&-&c2) + &c.scale(&ac);
    let (_, integral) = raw.clear_denominators();
    let coeffs: Vec<_> = integral.coefficients().iter().map(|x| x.to_integer()).collect();
    let g = crate::rational::gcd_of_integers(&coeffs);
    let d = integral.scale(&Q::new(1.into(), g));
    debug_assert!(d.pair(c)?.is_zero());
    if !d.self_intersection()?.is_positive() {
        return Err(Error::Screening(format!("{d} does not have positive square")));
    }
    let screen = nef_test_surface(&d, orbit_bound)?;
    if !screen.passed() {
        return Err(Error::Screening(format!("{d}: {}", screen.to_json_value())));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::BlowupContext;
    use crate::oracle::{FiniteField, PointConfig};
    use crate::rational::q;

    #[test]
    fn hyperplane_is_non_special() {
        let h = DivisorClass::hyperplane(BlowupContext::surface(2));
        let v = classify_asymptotic(&h, &ClassifyOptions::default()).unwrap();
        assert_eq!(v.tag, SpecialityTag::AsymptoticallyNonSpecial);
        assert_eq!(v.evidence.lower, 0);
    }

    #[test]
    fn mix_class_depends_on_position() {
        let ctx = BlowupContext::surface(10);
        let d = DivisorClass::uniform(ctx, 10, 3, 10);
        let general = classify_asymptotic(&d, &ClassifyOptions::default()).unwrap();
        assert_eq!(general.tag, SpecialityTag::AsymptoticallyNonSpecial);

        let f = FiniteField::new(65537).unwrap();
        let (_, cfg) = crate::oracle::sample_on_cubic_torsion(f, 10, 0).unwrap();
        let opts = ClassifyOptions { model: PositionModel::Configuration(cfg), ..ClassifyOptions::default() };
        let v = classify_asymptotic(&d, &opts).unwrap();
        assert_eq!(v.tag, SpecialityTag::Indeterminate);
        assert_eq!(v.evidence.witnesses, vec![DivisorClass::uniform(ctx, 3, 1, 10)]);
    }

    #[test]
    fn special_via_quartic() {
        let ctx = BlowupContext::surface(17);
        let c = DivisorClass::uniform(ctx, 4, 1, 17);
        let d = corollary_spe_witness(&c, 10).unwrap();
        assert_eq!(d.pair(&c).unwrap(), q(0));
        let f = FiniteField::new(65537).unwrap();
        let cfg = PointConfig::on_rational_quartic(f, 17, 0).unwrap();
        let opts = ClassifyOptions { model: PositionModel::Configuration(cfg), ..ClassifyOptions::default() };
        let v = classify_asymptotic(&d, &opts).unwrap();
        assert_eq!(v.tag, SpecialityTag::AsymptoticallySpecial);
        assert!(v.evidence.lower >= 2);
    }

    #[test]
    fn witness_preconditions() {
        let ctx = BlowupContext::surface(3);
        let line = DivisorClass::from_ints(ctx, 1, &[1, 1, 0]);
        assert!(matches!(corollary_spe_witness(&line, 5), Err(Error::Precondition(_))));
    }
}
