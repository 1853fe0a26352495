use proptest::prelude::*;

use super::*;
use crate::poly::parse_poly;
use crate::rat::rat;

fn s(vars: &str, text: &str, n: u32) -> TruncSeries {
    TruncSeries::new(&parse_poly(text, &Vars::parse(vars)).unwrap(), n)
}

#[test]
fn product_respects_truncation() {
    let p = &s("t", "1 + t", 1) * &s("t", "1 - t", 1);
    assert_eq!(p.body().to_string(), "1");
    assert_eq!(p.trunc(), 1);
}

#[test]
fn orders() {
    let f1 = s("u v w", "w^3 - 3*u^2*v*w + u^5 + u*v^3", 10);
    assert_eq!(f1.order(), SeriesOrder::Exact(3));
    assert_eq!(TruncSeries::zero(&Vars::parse("x"), 10).order(), SeriesOrder::AtLeast(11));
}

#[test]
fn mismatched_rings_are_rejected() {
    let a = s("x", "x", 3);
    let b = s("y", "y", 3);
    assert!(matches!(a.try_add(&b), Err(SeriesError::VarMismatch(..))));
}

#[test]
fn equality_uses_common_truncation() {
    assert_eq!(s("x", "1 + x + x^5", 4), s("x", "1 + x", 6));
    assert_ne!(s("x", "1 + x + x^3", 4), s("x", "1 + x", 6));
}

#[test]
fn roots() {
    let r = s("t", "1 + t", 4).nth_root_unit(2).unwrap();
    assert_eq!(r.body().to_string(), "-5/128*t^4 + 1/16*t^3 - 1/8*t^2 + 1/2*t + 1");
    assert_eq!(s("t", "1", 5).nth_root_unit(7).unwrap().body().to_string(), "1");
    assert_eq!(s("t", "2 + t", 5).nth_root_unit(2), Err(SeriesError::NotUnit("2".into())));
    assert_eq!(s("t", "1 + t", 5).nth_root_unit(0), Err(SeriesError::ZeroRootIndex));
}

#[test]
fn reversions() {
    let id = s("t", "t", 9).reversion().unwrap();
    assert_eq!(id.body().to_string(), "t");
    let scaled = s("t", "2*t", 5).reversion().unwrap();
    assert_eq!(scaled.body().to_string(), "1/2*t");
    assert_eq!(s("t", "t^2", 5).reversion(), Err(SeriesError::NotReversible));
    assert_eq!(s("t", "1 + t", 5).reversion(), Err(SeriesError::NotReversible));
    assert_eq!(s("x y", "x", 5).reversion(), Err(SeriesError::NotReversible));
}

#[test]
fn inverse_of_unit() {
    let u = s("x y", "1 + x - y^2", 8);
    let inv = u.inverse().unwrap();
    assert_eq!(&u * &inv, TruncSeries::one(u.vars(), 8));
}

#[test]
fn adic_trivial_cases() {
    let r = adic_decompose(&s("x", "0", 8), 1, 8).unwrap();
    assert!(r.a[0].is_zero() && r.b.is_zero());
    let r = adic_decompose(&s("x y", "y^3", 8), 1, 8).unwrap();
    assert!(r.a[0].is_zero());
    assert_eq!(r.b.body().to_string(), "y^3");
    assert!(matches!(adic_decompose(&s("x", "x^2", 8), 1, 8), Err(SeriesError::OrderTooLow { found: 2, .. })));
    assert!(matches!(adic_decompose(&s("x", "x^3", 8), 2, 8), Err(SeriesError::RankOutOfRange { .. })));
}

fn decomposition(f: &TruncSeries, n: u32) -> (Vec<Rat>, TruncSeries, TruncSeries) {
    let out = complete_squares(f, n).unwrap();
    let back = out.reconstruct().expect("decomposition");
    match out {
        SquareCompletion::Decomposition { scales, residual, .. } => (scales, residual, back),
        SquareCompletion::NotApplicable(r) => panic!("{r}"),
    }
}

#[test]
fn complete_squares_examples() {
    let f = s("x y", "x^2 + y^2 + x^3", 10);
    let (scales, residual, back) = decomposition(&f, 10);
    assert_eq!(scales, vec![rat(1, 1), rat(1, 1)]);
    assert!(residual.is_zero());
    assert_eq!(back, f);

    let f = s("x y", "x^2 + 2*x*y + 2*y^2 + y^5", 10);
    let (scales, residual, back) = decomposition(&f, 10);
    assert_eq!(scales, vec![rat(1, 1), rat(1, 1)]);
    assert!(residual.is_zero());
    assert_eq!(back, f);

    match complete_squares(&s("x y", "x^2 - y^2", 6), 6).unwrap() {
        SquareCompletion::NotApplicable(reason) => assert!(reason.contains("negative pivot"), "{reason}"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(complete_squares(&s("x y", "x^3", 6), 6), Err(SeriesError::NotOrderTwo(_))));
}

#[test]
fn complete_squares_keeps_trailing_residual() {
    // rank 1 in three variables: residual lives in y, z
    let f = s("x y z", "3*x^2 + x*y^2 + y^4 + z^3*y", 12);
    let out = complete_squares(&f, 12).unwrap();
    match &out {
        SquareCompletion::Decomposition { residual_vars, residual, .. } => {
            assert_eq!(residual_vars, &["y".to_string(), "z".to_string()]);
            assert!(!residual.body().uses_var(0));
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(out.reconstruct().unwrap(), f);
    // rank 1 in four variables is out of reach
    let g = s("w x y z", "w^2 + x^3", 6);
    assert!(matches!(complete_squares(&g, 6).unwrap(), SquareCompletion::NotApplicable(_)));
    // zero diagonal with coupling
    let h = s("x y", "x*y + y^2", 6);
    assert!(matches!(complete_squares(&h, 6).unwrap(), SquareCompletion::NotApplicable(_)));
}

#[test]
fn series_files_round_trip() {
    let f = s("x y", "1/2*x^3 - y", 7);
    let again = parse_series_file(&format_series_file(&f)).unwrap();
    assert_eq!(again.trunc(), 7);
    assert_eq!(again.body(), f.body());
    assert!(parse_series_file("vars: x\nx\n").is_err());
}

fn sparse(arity: usize, min_deg: u32, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let vars = Vars::new(&["x", "y", "z"][..arity]);
    proptest::collection::vec((proptest::collection::vec(0u32..=max_deg, arity), -4i64..5, 1i64..4), 0..=max_terms)
        .prop_map(move |terms| {
            Poly::from_terms(
                &vars,
                terms
                    .into_iter()
                    .filter(|(e, _, _)| (min_deg..=max_deg).contains(&e.iter().sum()))
                    .map(|(e, n, d)| (Monomial::from_exps(&e), rat(n, d))),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roots_and_reversions_invert(p in sparse(1, 1, 6, 4), n in 1u32..5) {
        let one = Poly::one(p.vars());
        let u = TruncSeries::new(&(&one + &p), 10);
        prop_assert_eq!(u.nth_root_unit(n).unwrap().pow(n), u.clone());
        let x = Poly::var_at(p.vars(), 0);
        let q = TruncSeries::new(&(&x + &p.truncate(10).mul_monomial(&Monomial::var(1, 0), &rat(1, 1))), 10);
        let r = q.reversion().unwrap();
        prop_assert_eq!(q.compose(std::slice::from_ref(&r)).unwrap(), TruncSeries::var_at(p.vars(), 0, 10));
        prop_assert_eq!(r.compose(std::slice::from_ref(&q)).unwrap(), TruncSeries::var_at(p.vars(), 0, 10));
    }

    #[test]
    fn order_is_a_valuation(a in sparse(3, 0, 4, 4), b in sparse(3, 0, 4, 4)) {
        let (sa, sb) = (TruncSeries::new(&a, 12), TruncSeries::new(&b, 12));
        let prod = &sa * &sb;
        if let (Some(oa), Some(ob)) = (a.order(), b.order()) {
            let lowest = a.homogeneous_part(oa).try_mul(&b.homogeneous_part(ob)).unwrap();
            prop_assert!(prod.valuation() >= oa + ob);
            if !lowest.is_zero() {
                prop_assert_eq!(prod.order(), SeriesOrder::Exact(oa + ob));
            }
        }
    }

    #[test]
    fn complete_squares_reexpands(c in sparse(3, 3, 6, 6), d1 in 1i64..4, d2 in 1i64..4, off in -2i64..3) {
        let v = c.vars().clone();
        let q = Poly::from_terms(&v, [
            (Monomial::from_exps(&[2, 0, 0]), rat(d1, 1)),
            (Monomial::from_exps(&[1, 1, 0]), rat(off, 1)),
            (Monomial::from_exps(&[0, 2, 0]), rat(4 * d2, 1)),
        ]);
        let f = TruncSeries::new(&(&q + &c), 9);
        let out = complete_squares(&f, 9).unwrap();
        if let Some(back) = out.reconstruct() {
            prop_assert_eq!(back, f);
        }
    }
}
