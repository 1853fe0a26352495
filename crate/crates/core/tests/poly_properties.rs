use badpoint_core::rat::rat;
use badpoint_core::{parse_poly, Monomial, Poly, Rat, Vars};
use proptest::prelude::*;

fn vars() -> Vars {
    Vars::parse("x y z")
}

fn coeff() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), coeff()), 0..6).prop_map(|terms| {
        Poly::from_terms(&vars(), terms.into_iter().map(|((a, b, c), k)| (Monomial::from_exps(&[a, b, c]), k)))
    })
}

fn point() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(coeff(), 3)
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn printed_form_parses_back(a in poly()) {
        prop_assert_eq!(parse_poly(&a.to_string(), &vars()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(), b in poly(), pt in point()) {
        let (ea, eb) = (a.eval_rat(&pt).unwrap(), b.eval_rat(&pt).unwrap());
        prop_assert_eq!((&a * &b).eval_rat(&pt).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval_rat(&pt).unwrap(), &ea + &eb);
    }

    #[test]
    fn composition_commutes_with_evaluation(a in poly(), images in prop::collection::vec(poly(), 3), pt in point()) {
        let inner: Vec<Rat> = images.iter().map(|q| q.eval_rat(&pt).unwrap()).collect();
        prop_assert_eq!(a.compose(&images).unwrap().eval_rat(&pt).unwrap(), a.eval_rat(&inner).unwrap());
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly(), i in 0usize..3) {
        let lhs = (&a * &b).derivative_at(i);
        let rhs = &(&a.derivative_at(i) * &b) + &(&a * &b.derivative_at(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division_undoes_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }
}
