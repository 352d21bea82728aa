mod common;

use common::*;
use powersym::newton_engine::{EFormula, EFormulaDoc};
use powersym::sym_basis::decompose;
use powersym::trace_charpoly::{
    charpoly_from_traces, companion_matrix, direct_charpoly, parse_matrix_json, simulate_traces,
};
use powersym::{express_e, Coeff, EExpansion, Error, MPoly, PPoly, PRat, Partition, RingSpec};
use proptest::prelude::*;

fn spec_strategy() -> impl Strategy<Value = RingSpec> {
    prop_oneof![Just(Z), Just(field(2)), Just(field(3)), Just(field(5)), Just(RingSpec::Rationals)]
}

fn mpoly(spec: RingSpec, n: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, n), -4i64..5), 0..5).prop_map(move |terms| {
        terms
            .into_iter()
            .fold(MPoly::zero(n, spec), |acc, (exps, c)| &acc + &MPoly::monomial(&exps, spec.from_i64(c)))
    })
}

fn ppoly(spec: RingSpec) -> impl Strategy<Value = PPoly> {
    prop::collection::vec((prop::collection::vec(1u32..5, 0..3), -3i64..4), 0..4).prop_map(move |terms| {
        PPoly::from_terms(
            spec,
            terms.into_iter().map(|(parts, c)| (Partition::new(parts).unwrap(), spec.from_i64(c))),
        )
    })
}

fn nonzero_ppoly(spec: RingSpec) -> impl Strategy<Value = PPoly> {
    ppoly(spec).prop_filter("non-zero", |p| !p.is_zero())
}

fn prat(spec: RingSpec) -> impl Strategy<Value = PRat> {
    (ppoly(spec), nonzero_ppoly(spec)).prop_map(|(a, b)| PRat::new(a, b).unwrap())
}

fn eexp(spec: RingSpec, n: usize) -> impl Strategy<Value = EExpansion> {
    prop::collection::vec((prop::collection::vec(1u32..=n as u32, 0..3), -3i64..4), 0..4).prop_map(
        move |terms| {
            EExpansion::from_terms(
                n,
                spec,
                terms.into_iter().map(|(parts, c)| (Partition::new(parts).unwrap(), spec.from_i64(c))),
            )
        },
    )
}

fn with_spec<T: std::fmt::Debug>(
    f: impl Fn(RingSpec) -> BoxedStrategy<T> + 'static,
) -> impl Strategy<Value = (RingSpec, T)> {
    spec_strategy().prop_flat_map(move |s| (Just(s), f(s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms((_, (a, b, c)) in with_spec(|s| (mpoly(s, 3), mpoly(s, 3), mpoly(s, 3)).boxed())) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication((_, (a, b)) in with_spec(|s| (mpoly(s, 2), mpoly(s, 2)).boxed())) {
        prop_assume!(!b.is_zero());
        let product = &a * &b;
        prop_assert_eq!(product.exact_divide(&b).unwrap(), a);
    }

    #[test]
    fn fraction_laws((_, (a, b, c)) in with_spec(|s| (prat(s), prat(s), prat(s)).boxed())) {
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        let left = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let right = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
        if !b.is_zero() {
            prop_assert_eq!(a.try_mul(&b).unwrap().try_div(&b).unwrap(), a);
        }
    }

    #[test]
    fn normalization_is_idempotent((_, a) in with_spec(|s| prat(s).boxed())) {
        let once = a.normalize();
        let twice = once.normalize();
        prop_assert_eq!(once.num(), twice.num());
        prop_assert_eq!(once.den(), twice.den());
        prop_assert_eq!(&once, &a);
    }

    #[test]
    fn substitution_is_a_homomorphism((_, (a, b)) in with_spec(|s| (ppoly(s), ppoly(s)).boxed()), n in 1usize..4) {
        let sum = &a + &b;
        let product = &a * &b;
        prop_assert_eq!(sum.subst_e(n), &a.subst_e(n) + &b.subst_e(n));
        prop_assert_eq!(product.subst_e(n), &a.subst_e(n) * &b.subst_e(n));
        prop_assert_eq!(product.subst_x(n), &a.subst_x(n) * &b.subst_x(n));
        prop_assert_eq!(a.subst_e(n).expand(), a.subst_x(n));
    }

    #[test]
    fn decompose_inverts_expand((_, e) in with_spec(|s| eexp(s, 3).boxed())) {
        prop_assert_eq!(decompose(&e.expand()).unwrap(), e);
    }

    #[test]
    fn json_round_trips((_, (m, e, q)) in with_spec(|s| (mpoly(s, 3), eexp(s, 3), prat(s)).boxed())) {
        let text = serde_json::to_string(&m.to_json()).unwrap();
        prop_assert_eq!(MPoly::from_json_str(&text).unwrap(), m);
        let text = serde_json::to_string(&e.to_json()).unwrap();
        prop_assert_eq!(EExpansion::from_json_str(&text).unwrap(), e);
        let text = serde_json::to_string(&q.to_json()).unwrap();
        prop_assert_eq!(PRat::from_json_str(&text).unwrap(), q);
    }

    #[test]
    fn formula_json_round_trips(spec in prop_oneof![Just(Z), Just(field(2)), Just(field(3))], n in 1usize..5, k in 1usize..5) {
        prop_assume!(k <= n);
        let f = express_e(k, n, spec).unwrap();
        let text = serde_json::to_string(&f.to_json(Some(true))).unwrap();
        let doc: EFormulaDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(EFormula::from_json(&doc).unwrap(), f);
    }

    #[test]
    fn companion_traces_never_give_a_wrong_answer(r in prop_oneof![Just(2u64), Just(3), Just(5)], coeffs in prop::collection::vec(0i64..5, 1..4)) {
        let spec = field(r);
        let mut c = vec![spec.one()];
        c.extend(coeffs.iter().map(|&v| spec.from_i64(v)));
        let m = companion_matrix(&c);
        prop_assert_eq!(direct_charpoly(&m).unwrap(), c.clone());
        let t = simulate_traces(&m).unwrap();
        match charpoly_from_traces(&t) {
            Ok(cp) => prop_assert_eq!(cp.coefficients(), c),
            Err(Error::Indeterminate(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn matrix_json_accepts_integers_and_strings(entries in prop::collection::vec(-9i64..10, 4)) {
        let spec = field(5);
        let text = format!("[[{}, \"{}\"], [{}, {}]]", entries[0], entries[1], entries[2], entries[3]);
        let m = parse_matrix_json(&text, spec).unwrap();
        let expected: Vec<Coeff> = entries.iter().map(|&v| spec.from_i64(v)).collect();
        prop_assert_eq!(m.concat(), expected);
    }

    #[test]
    fn target_parser_never_panics(text in "[ep h0-9_{}^*+\\- ]{0,24}", n in 1usize..5) {
        let _ = powersym::parse::parse_target(&text, n, field(3));
    }
}
