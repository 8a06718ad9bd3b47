use proptest::prelude::*;
use tpcalc_core::algebra::rational::int;
use tpcalc_core::maps::shipped_models;
use tpcalc_core::tpcore::{format_record, parse_record, set_partitions};
use tpcalc_core::{GradedClass, LnIndex, Monomial, Rational, Ring, RingSpec, Side, SymbolicExpr};

fn ring() -> Ring {
    RingSpec::projective([("a", 2), ("b", 3)]).unwrap()
}

fn arb_class() -> impl Strategy<Value = GradedClass> {
    let r = ring();
    let basis = r.basis();
    prop::collection::vec((-6i64..=6, 1i64..=3), basis.len()).prop_map(move |cs| {
        let terms = basis
            .iter()
            .cloned()
            .zip(cs)
            .map(|(m, (n, d))| (m, Rational::new(n.into(), d.into())));
        GradedClass::from_terms(&r, terms).unwrap()
    })
}

fn arb_unit() -> impl Strategy<Value = GradedClass> {
    (arb_class(), 1i64..=5).prop_map(|(c, k)| {
        let shift = int(k) - c.constant_term();
        &c + &GradedClass::constant(c.ring(), shift)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_axioms(a in arb_class(), b in arb_class(), c in arb_class()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &GradedClass::one(a.ring()), a.clone());
    }

    #[test]
    fn units_invert(u in arb_unit()) {
        let inv = u.invert_unit().unwrap();
        prop_assert_eq!(&u * &inv, GradedClass::one(u.ring()));
    }

    #[test]
    fn components_reassemble(a in arb_class()) {
        let sum = a.components().values().fold(GradedClass::zero(a.ring()), |acc, c| &acc + c);
        prop_assert_eq!(sum, a.clone());
        for (d, c) in a.components() {
            prop_assert_eq!(c.homogeneous_degree(), Some(d));
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(a in arb_class(), b in arb_class(), x in arb_class(), y in arb_class()) {
        // a -> a*x and b -> b*y respect the truncation relations
        let r = x.ring().clone();
        let images = [&GradedClass::gen(&r, 0) * &x, &GradedClass::gen(&r, 1) * &y];
        let phi = |c: &GradedClass| c.substitute(&images).unwrap();
        prop_assert_eq!(phi(&(&a * &b)), &phi(&a) * &phi(&b));
        prop_assert_eq!(phi(&(&a + &b)), &phi(&a) + &phi(&b));
    }

    #[test]
    fn class_text_round_trips(a in arb_class()) {
        prop_assert_eq!(GradedClass::parse(a.ring(), &a.to_string()).unwrap(), a);
    }

    #[test]
    fn projection_formula(idx in 0usize..14, seed in prop::collection::vec(-3i64..=3, 32)) {
        let models = shipped_models();
        let f = &models[idx % models.len()];
        let class = |r: &Ring, offset: usize| {
            let terms = r.basis().into_iter().enumerate().map(|(i, m)| (m, int(seed[(i + offset) % seed.len()])));
            GradedClass::from_terms(r, terms).unwrap()
        };
        let a = class(f.source().ambient(), 0);
        let b = class(f.target_ring(), 7);
        let lhs = f.pushforward(&a.multiply(&f.pullback(&b).unwrap()).unwrap()).unwrap();
        let rhs = f.pushforward(&a).unwrap().multiply(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn index_text_round_trips(exps in prop::collection::vec(0u32..12, 0..5)) {
        let i = LnIndex::new(exps);
        prop_assert_eq!(LnIndex::parse(&i.to_string()).unwrap(), i);
    }

    #[test]
    fn residual_records_round_trip(coeffs in prop::collection::vec((-20i64..=20, 1i64..=4), 3), kappa in -2i32..=3) {
        let r = ["c1^2", "c2", "c1*c3"].iter().zip(&coeffs).fold(SymbolicExpr::zero(Side::Source), |acc, (m, (n, d))| {
            let term = SymbolicExpr::parse(Side::Source, m).unwrap().scale(&Rational::new((*n).into(), (*d).into()));
            &acc + &term
        });
        let line = format_record(&["A1", "A0"], kappa, &r);
        let (names, k, back) = parse_record(&line).unwrap();
        prop_assert_eq!(k, kappa);
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(format_record(&names, k, &back), line);
    }
}

#[test]
fn bell_numbers() {
    let bell = [1usize, 2, 5, 15, 52, 203, 877];
    for (r, b) in (1..).zip(bell) {
        assert_eq!(set_partitions(r).unwrap().len(), b);
    }
}

#[test]
fn top_monomial_integrates_to_one() {
    let r = ring();
    let top = GradedClass::from_monomial(&r, r.top_monomial(), int(1));
    assert_eq!(top.integrate_top(), int(1));
    assert_eq!(r.top_monomial(), Monomial(vec![2, 3]));
}
