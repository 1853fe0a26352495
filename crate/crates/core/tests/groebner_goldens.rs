//! Bases and quotients compared with values frozen from an independent CAS
//! run (`tests/oracles/groebner_goldens.py`).

use std::collections::BTreeMap;

use badpoint_core::groebner::{
    ideal_product, ideal_quotient, is_reduced_basis, satisfies_buchberger_criterion, GbOptions, Ideal, MonOrder,
};
use badpoint_core::{parse_poly, Poly, Vars};

const GOLDENS: &str = include_str!("../data/goldens/groebner.txt");

fn goldens() -> BTreeMap<String, (Vars, Vec<String>)> {
    let mut out = BTreeMap::new();
    let mut current: Option<String> = None;
    for line in GOLDENS.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let (name, vars) = rest.split_once("] vars:").expect("section header");
            out.insert(name.to_string(), (Vars::parse(vars), Vec::new()));
            current = Some(name.to_string());
        } else {
            out.get_mut(current.as_ref().unwrap()).unwrap().1.push(line.to_string());
        }
    }
    out
}

fn ideal(vars: &str, gens: &[&str]) -> Ideal {
    let v = Vars::parse(vars);
    Ideal::new(&v, gens.iter().map(|g| parse_poly(g, &v).unwrap()).collect()).unwrap()
}

fn curve() -> Ideal {
    ideal("u v w", &["u^3 - v*w", "v^2 - u*w", "w^2 - u^2*v"])
}

fn pullback() -> Ideal {
    ideal("x y z", &["x^6 - y^2*(z^2+1)", "y^4 - x^2*(z^2+1)", "(z^2+1)^2 - x^4*y^2"])
}

fn hat_curve() -> Ideal {
    let h = "(y^8 - y^10 + y^11)";
    let w = "(-z^2 + 2*z^3)";
    ideal("x y z", &[&format!("x^6 - {h}*{w}"), &format!("{h}^2 - x^2*{w}"), &format!("{w}^2 - x^4*{h}")])
}

fn square(i: &Ideal) -> Ideal {
    ideal_product(i, i).unwrap()
}

fn check(name: &str, computed: &Ideal) {
    let g = goldens();
    let (vars, expected) = &g[name];
    assert_eq!(computed.vars(), vars, "{name}");
    let basis = computed.basis().expect("basis");
    let texts: Vec<String> = basis.iter().map(Poly::to_string).collect();
    assert_eq!(&texts, expected, "{name}");
    let order = computed.order().unwrap();
    assert!(satisfies_buchberger_criterion(basis, order), "{name}");
    assert!(is_reduced_basis(basis, order), "{name}");
}

#[test]
fn two_generator_example() {
    check("x2y2-y3", &ideal("x y", &["x^2 + y^2", "y^3"]).groebner(MonOrder::Grevlex).unwrap());
}

#[test]
fn curve_ideal() {
    check("curve", &curve().groebner(MonOrder::Grevlex).unwrap());
}

#[test]
fn pulled_back_curve_ideal() {
    check("curve-pullback", &pullback().groebner(MonOrder::Grevlex).unwrap());
}

#[test]
fn hat_curve_ideal() {
    check("hat-curve", &hat_curve().groebner(MonOrder::Grevlex).unwrap());
}

#[test]
fn quotient_of_curve_square() {
    let c = curve();
    let f1 = parse_poly("u^5 + u*v^3 + w^3 - 3*u^2*v*w", c.vars()).unwrap();
    check("curve-square-quotient", &ideal_quotient(&square(&c), &f1, GbOptions::default()).unwrap());
}

#[test]
fn quotient_of_pulled_back_square() {
    let g = pullback();
    let f = parse_poly("x^10 + x^2*y^6 + (z^2+1)^3 - 3*x^4*y^2*(z^2+1)", g.vars()).unwrap();
    check("pullback-square-quotient", &ideal_quotient(&square(&g), &f, GbOptions::default()).unwrap());
}
