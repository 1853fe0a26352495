use proptest::prelude::*;

use super::json::{format_certificate, parse_certificate, Certificate};
use super::*;
use crate::groebner::{GbOptions, Ideal};
use crate::poly::{parse_poly, Monomial, Poly, Vars};
use crate::rat::{int, rat, GaussRat};
use crate::series::TruncSeries;

fn p(vars: &str, s: &str) -> Poly {
    parse_poly(s, &Vars::parse(vars)).unwrap()
}

fn g(re: i64, im: i64) -> GaussRat {
    GaussRat::new(int(re), int(im))
}

#[test]
fn perfect_square_verifies() {
    let c = SosCert {
        ring: SosRing::Polynomial,
        target: p("x y", "x^2 + 2*x*y + y^2").into(),
        items: vec![SosItem::new(StructNonneg::one(), p("x y", "x + y"))],
    };
    assert_eq!(verify_sos(&c).unwrap(), SosVerdict::Ok);
}

#[test]
fn missing_constant_is_the_residual() {
    let c = SosCert {
        ring: SosRing::Polynomial,
        target: p("x y", "x^2 + y^2 + 1").into(),
        items: vec![SosItem::new(StructNonneg::one(), p("x y", "x")), SosItem::new(StructNonneg::one(), p("x y", "y"))],
    };
    assert_eq!(verify_sos(&c).unwrap(), SosVerdict::Fail { residual: p("x y", "1") });
}

#[test]
fn series_root_rejected_in_polynomial_ring() {
    let c = SosCert {
        ring: SosRing::Polynomial,
        target: p("x", "x^2").into(),
        items: vec![SosItem::new(StructNonneg::one(), TruncSeries::new(&p("x", "x"), 4))],
    };
    assert!(matches!(verify_sos(&c), Err(CertError::RingMismatch(_))));
}

#[test]
fn truncated_identity_ignores_high_degree() {
    // 1 + x = (sqrt(1+x))^2 through any order
    let v = Vars::parse("x");
    let root = TruncSeries::new(&p("x", "1 + x"), 10).nth_root_unit(2).unwrap();
    let c = SosCert {
        ring: SosRing::Truncated(10),
        target: p("x", "1 + x").into(),
        items: vec![SosItem::new(StructNonneg::one(), root.clone())],
    };
    assert!(verify_sos(&c).unwrap().is_ok());
    let short = SosCert { ring: SosRing::Truncated(12), ..c };
    assert_eq!(verify_sos(&short), Err(CertError::TruncationTooSmall { have: 10, need: 12 }));
    assert_eq!(v.len(), 1);
}

#[test]
fn structural_atoms_must_be_positive() {
    let s = StructNonneg::one().times_atom(p("z", "z"), int(0));
    assert!(matches!(s.validate(), Err(CertError::Structural(_))));
    let s = StructNonneg::scalar(int(-1));
    assert!(matches!(s.validate(), Err(CertError::Structural(_))));
    let s = StructNonneg::square(p("z", "z")).times_atom(p("z", "z"), int(1));
    assert_eq!(s.denote(&Vars::parse("z")).unwrap(), p("z", "z^4 + z^2"));
}

fn complex_point_amgm() -> AmGmCert {
    let v = "x y z";
    AmGmCert {
        terms: vec![
            StructNonneg::square(p(v, "x^5")),
            StructNonneg::square(p(v, "x*y^3")),
            StructNonneg::square(p(v, "z^2 + 1")).times_atom(p(v, "z"), int(1)),
        ],
        mean: StructNonneg::square(p(v, "x^2*y")).times_atom(p(v, "z"), int(1)),
        target: p(v, "x^10 + x^2*y^6 + (z^2+1)^3 - 3*x^4*y^2*(z^2+1)"),
    }
}

#[test]
fn amgm_three_terms() {
    assert_eq!(verify_amgm(&complex_point_amgm()).unwrap(), AmGmVerdict::Ok);
}

#[test]
fn amgm_rejects_wrong_target() {
    let mut c = complex_point_amgm();
    c.target = &c.target + &p("x y z", "1");
    assert!(!verify_amgm(&c).unwrap().is_ok());
}

#[test]
fn amgm_rejects_bad_means() {
    let v = "a b";
    let bad_power = AmGmCert {
        terms: vec![StructNonneg::square(p(v, "a")), StructNonneg::square(p(v, "b"))],
        mean: StructNonneg::square(p(v, "a*b")),
        target: p(v, "a^2 + b^2 - 2*a^2*b^2"),
    };
    assert!(!verify_amgm(&bad_power).unwrap().is_ok());
    let negative = AmGmCert {
        terms: vec![StructNonneg::square(p(v, "a")), StructNonneg::square(p(v, "b"))],
        mean: StructNonneg { scalar: int(-1), squares: vec![p(v, "a*b")], atoms: vec![] },
        target: p(v, "a^2 + b^2 + 2*a^2*b^2"),
    };
    assert!(matches!(verify_amgm(&negative), Err(CertError::Structural(_))));
    let one_term = AmGmCert { terms: vec![StructNonneg::square(p(v, "a"))], ..negative };
    assert!(matches!(verify_amgm(&one_term), Err(CertError::Malformed(_))));
}

#[test]
fn amgm_equality_case() {
    let c = AmGmCert {
        terms: vec![StructNonneg::square(p("x", "x")), StructNonneg::square(p("x", "x"))],
        mean: StructNonneg::square(p("x", "x")),
        target: p("x", "0"),
    };
    assert!(verify_amgm(&c).unwrap().is_ok());
}

#[test]
fn classical_motzkin_obstruction() {
    let m = p("x y", "x^4*y^2 + x^2*y^4 + 1 - 3*x^2*y^2");
    let o = find_non_sos_obstruction(&m).unwrap().unwrap();
    assert_eq!(o.beta, Monomial::from_exps(&[1, 1]));
    assert_eq!(o.coefficient, int(-3));
    assert_eq!(o.decompositions.len(), 1);
    assert!(verify_non_sos(&o).unwrap());
}

#[test]
fn specialized_quartic_obstruction() {
    let q = p("y z", "1 + 4*y^2*z^4 + 4*y^4*z^2 - y^2*z^2");
    let o = find_non_sos_obstruction(&q).unwrap().unwrap();
    assert_eq!(o.corner, Monomial::from_exps(&[2, 2]));
    assert_eq!(o.coefficient, int(-1));
    assert_eq!(o.support.len(), 4);
}

#[test]
fn sum_of_two_squares_has_no_obstruction() {
    assert_eq!(find_non_sos_obstruction(&p("x y", "x^2 + y^2")).unwrap(), None);
    assert_eq!(find_non_sos_obstruction(&p("x", "0")), Err(CertError::ZeroPolynomial));
}

#[test]
fn tampered_obstruction_fails() {
    let m = p("x y", "x^4*y^2 + x^2*y^4 + 1 - 3*x^2*y^2");
    let mut o = find_non_sos_obstruction(&m).unwrap().unwrap();
    o.coefficient = int(-2);
    assert!(!verify_non_sos(&o).unwrap());
}

fn series(vars: &str, texts: &[&str], n: u32) -> Vec<TruncSeries> {
    texts.iter().map(|t| TruncSeries::new(&p(vars, t), n)).collect()
}

#[test]
fn cone_below_every_product() {
    let gens = series("x y", &["x^2", "y^2"], 4);
    let f = TruncSeries::new(&p("x y", "x*y"), 4);
    let target = Monomial::from_exps(&[1, 1]);
    let c = cone_obstruction_for(&gens, &target).unwrap();
    assert!(verify_cone_obstruction(&c, &gens, &f).unwrap().is_ok());
}

#[test]
fn cone_fails_when_a_product_divides() {
    let gens = series("x", &["x"], 4);
    let f = TruncSeries::new(&p("x", "x^2"), 4);
    let c = cone_obstruction_for(&gens, &Monomial::from_exps(&[2])).unwrap();
    let r = verify_cone_obstruction(&c, &gens, &f).unwrap();
    assert!(!r.is_ok());
    assert_eq!(r.offending, vec![(0, 0, Monomial::from_exps(&[2]))]);
}

#[test]
fn cone_needs_enough_terms() {
    let gens = series("x y", &["x^2", "y^2"], 1);
    let f = TruncSeries::new(&p("x y", "x*y"), 4);
    let c = ConeObstruction { target: Monomial::from_exps(&[1, 1]), products: vec![] };
    assert_eq!(verify_cone_obstruction(&c, &gens, &f), Err(CertError::TruncationTooSmall { have: 1, need: 2 }));
}

#[test]
fn negative_square_sampled() {
    let out = sample_nonnegativity(&p("x", "-x^2"), &Grid::cube(1, int(-1), int(1), rat(1, 2))).unwrap();
    assert_eq!(out, SampleOutcome::Counterexample { point: vec![rat(1, 2)], value: rat(-1, 4) });
}

#[test]
fn zero_has_no_counterexample() {
    let out = sample_nonnegativity(&p("x", "0"), &Grid::cube(1, int(-1), int(1), rat(1, 2))).unwrap();
    assert_eq!(out, SampleOutcome::NoCounterexample { points: 5 });
}

#[test]
fn empty_box_rejected() {
    let r = sample_nonnegativity(&p("x", "x"), &Grid::cube(1, int(1), int(-1), rat(1, 2)));
    assert!(matches!(r, Err(CertError::EmptyBox(_))));
    let r = sample_nonnegativity(&p("x", "x"), &Grid::cube(1, int(-1), int(1), int(0)));
    assert!(matches!(r, Err(CertError::EmptyBox(_))));
}

#[test]
fn avoid_with_identity_change() {
    let a = vec![g(1, 0), g(0, 0), g(1, 0)];
    let o = vec![g(0, 0), g(0, 0), g(0, 0)];
    let map = birational_avoid(std::slice::from_ref(&a), std::slice::from_ref(&o)).unwrap();
    assert_eq!(map.steps.len(), 1);
    assert_eq!(map.steps[0].min_poly, p("t", "t - 1"));
    assert_eq!(map.apply(&o), o);
    let comps = map.components(&Vars::parse("x1 x2 x3"));
    assert_eq!(comps[2], p("x1 x2 x3", "x1*x3 - x3"));
    assert!(verify_avoid_map(&map, &[a], &[o]).is_ok());
}

#[test]
fn avoid_gaussian_point() {
    let a = vec![g(0, 1), g(0, 0), g(1, 0)];
    let k = vec![g(1, 0), g(1, 0), g(1, 0)];
    let map = birational_avoid(std::slice::from_ref(&a), std::slice::from_ref(&k)).unwrap();
    assert_eq!(map.steps[0].min_poly, p("t", "t^2 + 1"));
    assert!(verify_avoid_map(&map, &[a], &[k]).is_ok());
}

#[test]
fn avoid_two_points_by_composition() {
    let avoid = vec![vec![g(1, 0), g(0, 0), g(1, 0)], vec![g(1, 0), g(2, 0), g(3, 0)]];
    let keep = vec![vec![g(1, 0), g(1, 0), g(1, 0)]];
    let map = birational_avoid(&avoid, &keep).unwrap();
    assert_eq!(map.steps.len(), 2);
    let rep = verify_avoid_map(&map, &avoid, &keep);
    assert!(rep.is_ok(), "{rep:?}");
}

#[test]
fn avoid_origin_needs_shift() {
    let a = vec![g(0, 0), g(0, 0)];
    let k = vec![g(1, 0), g(0, 0)];
    let map = birational_avoid(std::slice::from_ref(&a), std::slice::from_ref(&k)).unwrap();
    assert!(verify_avoid_map(&map, &[a], &[k]).is_ok());
}

#[test]
fn avoid_rejects_conjugates_and_small_dimension() {
    let a = vec![g(0, 1), g(0, 0)];
    let b = vec![g(0, -1), g(0, 0)];
    assert_eq!(birational_avoid(&[a], &[b]), Err(CertError::CoincidentPoints(0, 1)));
    assert_eq!(birational_avoid(&[vec![g(1, 0)]], &[]), Err(CertError::DimensionTooSmall(1)));
}

#[test]
fn verifier_flags_wrong_avoided_point() {
    let a = vec![g(1, 0), g(0, 0), g(1, 0)];
    let o = vec![g(0, 0), g(0, 0), g(0, 0)];
    let map = birational_avoid(std::slice::from_ref(&a), std::slice::from_ref(&o)).unwrap();
    let other = vec![g(2, 0), g(0, 0), g(1, 0)];
    assert!(!verify_avoid_map(&map, &[other], &[o]).is_ok());
}

fn curve_ideal() -> Ideal {
    let v = Vars::parse("u v w");
    let gens = ["u^3 - v*w", "v^2 - u*w", "w^2 - u^2*v"].iter().map(|t| parse_poly(t, &v).unwrap()).collect();
    Ideal::new(&v, gens).unwrap()
}

fn curve_cert() -> BadPointCert {
    BadPointCert {
        ideal: curve_ideal(),
        f: p("u v w", "u^5 + u*v^3 + w^3 - 3*u^2*v*w"),
        point: vec![g(0, 0); 3],
        non_membership: NonMembership::OrderBound,
        density: vec![DensityWitness { point: vec![int(1), int(1), int(1)], rank: 2 }],
    }
}

#[test]
fn curve_bad_point_by_order() {
    let rep = verify_bad_point(&curve_cert(), GbOptions::default()).unwrap();
    assert!(rep.is_ok(), "{rep:?}");
    assert!(rep.conclusion.is_some());
}

#[test]
fn curve_bad_point_by_localization() {
    let mut c = curve_cert();
    c.non_membership = NonMembership::Localized;
    assert!(verify_bad_point(&c, GbOptions::default()).unwrap().is_ok());
}

#[test]
fn broken_bad_point_fails_membership() {
    let mut c = curve_cert();
    c.f = &c.f + &p("u v w", "1");
    let rep = verify_bad_point(&c, GbOptions::default()).unwrap();
    let membership = rep.checks.iter().find(|l| l.name == "f in I").unwrap();
    assert!(!membership.passed);
    assert_eq!(rep.conclusion, None);
}

#[test]
fn density_witness_off_the_curve_fails() {
    let mut c = curve_cert();
    c.density = vec![DensityWitness { point: vec![int(1), int(2), int(3)], rank: 2 }];
    assert!(!verify_bad_point(&c, GbOptions::default()).unwrap().is_ok());
}

#[test]
fn certificate_documents_round_trip() {
    let docs = [
        Certificate::AmGm(complex_point_amgm()),
        Certificate::BadPoint(curve_cert()),
        Certificate::NonSos { poly: p("x y", "x^2 + y^2"), beta: Some(Monomial::from_exps(&[1, 0])) },
        Certificate::Sos(SosCert {
            ring: SosRing::Truncated(6),
            target: TruncSeries::new(&p("x", "1 + x"), 6).into(),
            items: vec![SosItem::new(StructNonneg::scalar(rat(1, 2)), TruncSeries::new(&p("x", "1 + 1/2*x"), 6))],
        }),
    ];
    for c in docs {
        let text = format_certificate(&c);
        assert_eq!(parse_certificate(&text).unwrap(), c, "{text}");
    }
}

#[test]
fn unknown_fields_rejected() {
    let text = r#"{"kind":"non_sos","vars":["x"],"poly":"x^2","extra":1}"#;
    assert!(matches!(parse_certificate(text), Err(CertError::Malformed(_))));
    let text = r#"{"kind":"sos","vars":["x"],"ring":"polynomial","target":"x^2","items":[{"root":"x","scale":{"scalar":"1","bogus":[]}}]}"#;
    assert!(matches!(parse_certificate(text), Err(CertError::Malformed(_))));
    let text = r#"{"kind":"sos","vars":["x"],"ring":"polynomial","target":"x^2","items":[{"root":"x"}]}"#;
    assert!(parse_certificate(text).is_ok());
    let text = r#"{"kind":"nope","vars":["x"]}"#;
    assert!(parse_certificate(text).is_err());
}

#[test]
fn undeclared_variable_rejected() {
    let text = r#"{"kind":"non_sos","vars":["x"],"poly":"y^2"}"#;
    assert!(matches!(parse_certificate(text), Err(CertError::Malformed(_))));
}

fn small_poly(vars: &Vars) -> impl Strategy<Value = Poly> {
    let n = vars.len();
    let vars = vars.clone();
    prop::collection::vec((prop::collection::vec(0u32..3, n), -3i64..=3), 1..4).prop_map(move |terms| {
        Poly::from_terms(&vars, terms.into_iter().map(|(e, c)| (Monomial::from_exps(&e), int(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verified_sums_of_squares_sample_nonnegative(
        roots in prop::collection::vec(small_poly(&Vars::parse("x y")), 1..4),
        scalars in prop::collection::vec(0i64..4, 3),
    ) {
        let v = Vars::parse("x y");
        let mut target = Poly::zero(&v);
        let mut items = Vec::new();
        for (r, s) in roots.iter().zip(&scalars) {
            target = &target + &(r * r).scale(&int(*s));
            items.push(SosItem::new(StructNonneg::scalar(int(*s)), r.clone()));
        }
        let c = SosCert { ring: SosRing::Polynomial, target: target.clone().into(), items };
        prop_assert!(verify_sos(&c).unwrap().is_ok());
        let out = sample_nonnegativity(&target, &Grid::cube(2, int(-2), int(2), rat(1, 2))).unwrap();
        let clean = matches!(out, SampleOutcome::NoCounterexample { .. });
        prop_assert!(clean);
    }

    #[test]
    fn stored_supports_never_change_the_verdict(junk in prop::collection::vec(prop::collection::vec(0u32..7, 3), 0..6)) {
        let v = "a b c";
        let gens = series(v, &["a^2 + b*c", "b^3 - a*c", "c^2 + a^3"], 8);
        let f = TruncSeries::new(&p(v, "a*b*c + a^4"), 8);
        let target = Monomial::from_exps(&[1, 1, 1]);
        let honest = cone_obstruction_for(&gens, &target).unwrap();
        let mut tampered = honest.clone();
        for (k, e) in junk.iter().enumerate() {
            let slot = k % tampered.products.len();
            tampered.products[slot].support.insert(Monomial::from_exps(e));
        }
        if !junk.is_empty() {
            tampered.products.pop();
        }
        let a = verify_cone_obstruction(&honest, &gens, &f).unwrap();
        let b = verify_cone_obstruction(&tampered, &gens, &f).unwrap();
        prop_assert_eq!(a.is_ok(), b.is_ok());
        prop_assert_eq!(a.offending, b.offending);
    }

    #[test]
    fn avoid_maps_verify_on_random_points(
        coords in prop::collection::vec((-3i64..=3, -2i64..=2), 9),
    ) {
        let pts: Vec<Vec<GaussRat>> = coords.chunks(3).map(|c| c.iter().map(|&(r, i)| g(r, i)).collect()).collect();
        let distinct = (0..3).all(|i| (i + 1..3).all(|j| {
            pts[i] != pts[j] && !pts[i].iter().zip(&pts[j]).all(|(a, b)| *a == b.conj())
        }));
        prop_assume!(distinct);
        let map = birational_avoid(&pts[..2], &pts[2..]).unwrap();
        let rep = verify_avoid_map(&map, &pts[..2], &pts[2..]);
        prop_assert!(rep.is_ok(), "{:?}", rep);
        for s in &map.steps {
            prop_assert!(s.min_poly.degree().unwrap() <= 2);
        }
    }
}
