use num_traits::{Signed, Zero};
use proptest::prelude::*;

use blowup::positivity::{
    classify_asymptotic, dperp_gram, nef_dual_membership, nef_test_pn, pa_perp_candidates, pa_perp_upper,
    ClassifyOptions, SpecialityTag,
};
use blowup::{BlowupContext, DivisorClass};

fn big_class(max_r: usize) -> impl Strategy<Value = DivisorClass> {
    (1usize..=max_r, 1i64..=15, prop::collection::vec(-2i64..=8, max_r))
        .prop_map(|(r, d, m)| DivisorClass::from_ints(BlowupContext::surface(r), d, &m[..r]))
        .prop_filter("positive square", |c| c.self_intersection().unwrap().is_positive())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perp_is_negative_definite(c in big_class(12)) {
        let g = dperp_gram(&c).unwrap();
        prop_assert_eq!(g.basis.len(), c.ctx().r());
        for b in &g.basis {
            prop_assert!(b.pair(&c).unwrap().is_zero());
        }
        prop_assert!(g.pivots.iter().all(Signed::is_negative));
    }

    #[test]
    fn candidates_respect_upper_bound(c in big_class(8), t in 1i64..=2) {
        let upper = pa_perp_upper(&c).unwrap();
        for x in pa_perp_candidates(&c, t).unwrap() {
            prop_assert!(x.pair(&c).unwrap().is_zero());
            let g = x.arithmetic_genus().unwrap();
            prop_assert!(g <= upper);
            prop_assert!(g >= blowup::rational::q(t));
        }
    }

    #[test]
    fn nef_test_matches_cone_membership(n in 2u32..=4, raw in prop::collection::vec(-3i64..=6, 16), d in -2i64..=10) {
        let r = ((1usize << n) - 1).min(raw.len());
        let ctx = BlowupContext::new(n, r).unwrap();
        let c = DivisorClass::from_ints(ctx, d, &raw[..r]);
        prop_assert_eq!(nef_test_pn(&c).unwrap(), nef_dual_membership(&c).unwrap().is_in_cone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn classifier_never_overclaims(r in 2usize..=6, d in 3i64..=8, m in prop::collection::vec(0i64..=3, 6)) {
        let c = DivisorClass::from_ints(BlowupContext::surface(r), d, &m[..r]);
        prop_assume!(c.self_intersection().unwrap().is_positive());
        let v = match classify_asymptotic(&c, &ClassifyOptions::default()) {
            Ok(v) => v,
            // not nef up to the bound
            Err(blowup::Error::Precondition(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        if v.tag == SpecialityTag::AsymptoticallySpecial {
            prop_assert!(v.evidence.lower >= 2);
            prop_assert!(!v.evidence.witnesses.is_empty());
        }
        if v.tag == SpecialityTag::AsymptoticallyNonSpecial {
            prop_assert!(v.evidence.undecided.is_empty());
        }
        for w in &v.evidence.witnesses {
            prop_assert!(w.pair(&c).unwrap().is_zero());
        }
    }
}
