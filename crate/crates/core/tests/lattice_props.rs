use num_traits::Zero;
use proptest::prelude::*;

use blowup::lattice::canonical_class;
use blowup::rational::q;
use blowup::weyl::{fundamental_roots, reduce, reflect};
use blowup::{BlowupContext, DivisorClass, QuadraticScalar};

fn surface_class(r: usize) -> impl Strategy<Value = DivisorClass> {
    (-20i64..=20, prop::collection::vec(-8i64..=12, r))
        .prop_map(move |(d, m)| DivisorClass::from_ints(BlowupContext::surface(r), d, &m))
}

fn triple() -> impl Strategy<Value = (DivisorClass, DivisorClass, DivisorClass)> {
    (0usize..=12).prop_flat_map(|r| (surface_class(r), surface_class(r), surface_class(r)))
}

fn pair_of() -> impl Strategy<Value = (DivisorClass, DivisorClass)> {
    (0usize..=12).prop_flat_map(|r| (surface_class(r), surface_class(r)))
}

proptest! {
    #[test]
    fn pairing_is_symmetric_and_bilinear((a, b, c) in triple(), s in -5i64..=5) {
        prop_assert_eq!(a.pair(&b).unwrap(), b.pair(&a).unwrap());
        let lhs = (&(&q(s) * &a) + &b).pair(&c).unwrap();
        let rhs = q(s) * a.pair(&c).unwrap() + b.pair(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vdim_matches_quadratic_form(r in 0usize..=14, d in 0i64..=30, seed in prop::collection::vec(0i64..=33, 14)) {
        let m: Vec<i64> = seed.iter().take(r).map(|x| x % (d + 3)).collect();
        let c = DivisorClass::from_ints(BlowupContext::surface(r), d, &m);
        let k = canonical_class(c.ctx());
        let half = (c.self_intersection().unwrap() - c.pair(&k).unwrap()) / q(2);
        prop_assert_eq!(c.vdim().unwrap(), half.clone());
        prop_assert_eq!(c.vdim_surface().unwrap(), half);
    }

    #[test]
    fn genus_is_additive_up_to_intersection((a, b) in pair_of()) {
        let lhs = (&a + &b).arithmetic_genus().unwrap();
        let rhs = a.arithmetic_genus().unwrap() + b.arithmetic_genus().unwrap() + a.pair(&b).unwrap() - q(1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quadratic_norm(p in -50i64..=50, x in -50i64..=50, b in prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 13, 21, 35])) {
        let b = q(b);
        let z = QuadraticScalar::new(q(p), q(x), b.clone()).unwrap();
        let prod = &z * &z.conjugate();
        prop_assert!(prod.irrational_part().is_zero());
        prop_assert_eq!(prod.rational_part().clone(), q(p * p) - q(x * x) * b.clone());
        prop_assert_eq!(z.norm(), q(p * p) - q(x * x) * b);
    }

    #[test]
    fn json_roundtrip(c in (0usize..=10).prop_flat_map(surface_class)) {
        let back = DivisorClass::parse_json(&c.to_json_value().to_string()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn reflections_are_isometries_fixing_k((a, b) in (3usize..=12).prop_flat_map(|r| (surface_class(r), surface_class(r)))) {
        let ctx = a.ctx();
        let k = canonical_class(ctx);
        for root in fundamental_roots(ctx).unwrap().roots {
            let (ra, rb) = (reflect(&a, &root).unwrap(), reflect(&b, &root).unwrap());
            prop_assert_eq!(ra.pair(&rb).unwrap(), a.pair(&b).unwrap());
            prop_assert_eq!(reflect(&k, &root).unwrap(), k.clone());
        }
    }

    #[test]
    fn reduction_replays(c in (3usize..=12).prop_flat_map(surface_class)) {
        let rep = reduce(&c).unwrap();
        prop_assert_eq!(rep.replay().unwrap(), rep.result.clone());
        let k = canonical_class(c.ctx());
        prop_assert_eq!(rep.result.self_intersection().unwrap(), c.self_intersection().unwrap());
        prop_assert_eq!(rep.result.pair(&k).unwrap(), c.pair(&k).unwrap());
    }

    #[test]
    fn reduction_commutes_with_scaling(c in (3usize..=9).prop_flat_map(surface_class), s in 2i64..=5) {
        let a = reduce(&c).unwrap();
        let b = reduce(&c.scale(&q(s))).unwrap();
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.result.scale(&q(s)), b.result);
    }
}
