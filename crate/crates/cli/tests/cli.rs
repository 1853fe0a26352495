//! The binary against direct library calls, exit statuses and error lines.

use std::path::PathBuf;
use std::process::Command;

use badpoint_core::certificates::json::{format_certificate, Certificate};
use badpoint_core::certificates::{find_non_sos_obstruction, Grid, SampleOutcome};
use badpoint_core::groebner::{dimension, ideal_quotient, normal_form, parse_ideal_file, GbOptions, MonOrder};
use badpoint_core::paperbook::instances as inst;
use badpoint_core::paperbook::{format_json, format_text, run_claims, Catalog, Filter};
use badpoint_core::rat::{int, rat};
use badpoint_core::series::{adic_decompose, HatCoordinates, TruncSeries};
use badpoint_core::{parse_poly, Poly, Vars};
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn badpoint(args: &[&str]) -> Run {
    badpoint_env(args, &[])
}

fn badpoint_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_badpoint"));
    cmd.args(args).env_remove("BADPOINT_STEP_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "machine"]);
    let r = badpoint(&a);
    assert!(r.stderr.is_empty(), "{}", r.stderr);
    (r.code, serde_json::from_str(&r.stdout).expect("json"))
}

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn write_cert(c: &Certificate) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), format_certificate(c)).unwrap();
    f
}

const F1: &str = "u^5+u*v^3+w^3-3*u^2*v*w";
const F_COMPLEX: &str = "x^10 + x^2*y^6 + (z^2+1)^3 - 3*x^4*y^2*(z^2+1)";

#[test]
fn member_reports_membership() {
    let r = badpoint(&["member", "--ideal", &data("ideal-c.ideal"), "--poly", F1]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "member\n"));
    let r = badpoint(&["member", "--ideal", &data("ideal-c.ideal"), "--poly", "u"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("not member\n"));
}

#[test]
fn non_sos_finds_the_corner() {
    let r = badpoint(&["non-sos", "--poly", "1+4*y^2*z^4+4*y^4*z^2-y^2*z^2", "--vars", "y", "z"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("obstruction at y^2*z^2\ncoefficient: -1\n"), "{}", r.stdout);
}

#[test]
fn non_sos_without_obstruction_exits_one() {
    let r = badpoint(&["non-sos", "--poly", "x^2 + y^2", "--vars", "x", "y"]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "no obstruction found\n"));
}

#[test]
fn gb_matches_library() {
    let text = std::fs::read_to_string(data("ideal-d.ideal")).unwrap();
    let lib = parse_ideal_file(&text).unwrap().ideal.groebner(MonOrder::Grevlex).unwrap();
    let (code, v) = machine(&["gb", "--ideal", &data("ideal-d.ideal")]);
    assert_eq!(code, 0);
    assert_eq!(v["basis"], serde_json::json!(strings(lib.basis().unwrap())));
    assert_eq!(v["order"], "grevlex");
}

#[test]
fn quotient_and_dim_match_library() {
    let text = std::fs::read_to_string(data("ideal-gamma.ideal")).unwrap();
    let ideal = parse_ideal_file(&text).unwrap().ideal;
    let f = parse_poly("x^2", ideal.vars()).unwrap();
    let q = ideal_quotient(&ideal, &f, GbOptions::default()).unwrap();
    let (_, v) = machine(&["quotient", "--ideal", &data("ideal-gamma.ideal"), "--poly", "x^2"]);
    assert_eq!(v["basis"], serde_json::json!(strings(q.basis().unwrap())));
    let d = dimension(&ideal.groebner(MonOrder::Grevlex).unwrap()).unwrap();
    let (_, v) = machine(&["dim", "--ideal", &data("ideal-gamma.ideal")]);
    assert_eq!(v["dimension"], d);
}

#[test]
fn member_remainder_matches_library() {
    let text = std::fs::read_to_string(data("ideal-d.ideal")).unwrap();
    let ideal = parse_ideal_file(&text).unwrap().ideal.groebner(MonOrder::Grevlex).unwrap();
    let h = "y^8 - y^10 + y^11";
    let w = normal_form(&parse_poly(h, ideal.vars()).unwrap(), &ideal).unwrap();
    let (code, v) = machine(&["member", "--ideal", &data("ideal-d.ideal"), "--poly", h]);
    assert_eq!(code, 1);
    assert_eq!(v["remainder"], w.remainder.to_string());
}

#[test]
fn localized_membership_in_the_square() {
    let args = ["member-local", "--ideal", &data("ideal-gamma.ideal"), "--poly", F_COMPLEX, "--point", "0,0,i"];
    let r = badpoint(&args);
    assert_eq!(r.code, 0, "f itself lies in the ideal near the point");
    let mut sq = args.to_vec();
    sq.push("--square");
    let (code, v) = machine(&sq);
    assert_eq!(code, 1);
    assert_eq!(v["quotient"], serde_json::json!(["x^2", "y^2", "z^2 + 1"]));
}

#[test]
fn hessian_minor_and_reduction() {
    let (_, v) = machine(&["hessian", "--poly", F_COMPLEX, "--vars", "x", "y", "z", "--rows", "0,1", "--cols", "1,2"]);
    let vars = Vars::parse("x y z");
    let expected = parse_poly("144*x^5*y^2*z*(4*y^4 + x^2*(z^2 + 1))", &vars).unwrap();
    // rows (f_xx, f_xy), (f_xy, f_yy) with columns y, z give the transposed layout of the stated minor up to sign
    let got = parse_poly(v["det"].as_str().unwrap(), &vars).unwrap();
    assert!(got == expected || got == -&expected, "{got}");
    let (_, v) = machine(&[
        "hessian",
        "--poly",
        F_COMPLEX,
        "--vars",
        "x",
        "y",
        "z",
        "--rows",
        "0,1",
        "--cols",
        "0,1",
        "--modulo",
        &data("hessian-locus.ideal"),
    ]);
    assert_eq!(v["entries"], serde_json::json!([["56*x^2*y^2", "-12*x^3*y"], ["-12*x^3*y", "24*x^4"]]));
}

#[test]
fn series_commands_match_library() {
    let v = Vars::parse("t");
    let s = TruncSeries::new(&parse_poly("t + t^2", &v).unwrap(), 8);
    let (_, out) = machine(&["revert", "--series", "t + t^2", "--var", "t", "--trunc", "8"]);
    assert_eq!(out["series"], s.reversion().unwrap().body().to_string());
    let s = TruncSeries::new(&parse_poly("1 + t", &v).unwrap(), 6);
    let (_, out) = machine(&["series-root", "--series", "1 + t", "--vars", "t", "--root", "2", "--trunc", "6"]);
    assert_eq!(out["series"], s.nth_root_unit(2).unwrap().body().to_string());
    let x = Vars::parse("x");
    let g = TruncSeries::new(&parse_poly("x^3", &x).unwrap(), 9);
    let lib = adic_decompose(&g, 1, 9).unwrap();
    let (_, out) = machine(&["adic", "--series", "x^3", "--vars", "x", "--rank", "1", "--trunc", "9"]);
    assert_eq!(out["a"][0]["series"], lib.a[0].body().to_string());
    assert_eq!(out["b"], "0");
}

#[test]
fn sample_matches_library() {
    let v = Vars::parse("w x y z");
    let family = "x^6 + w^2*y^2*z^4 + w^2*y^4*z^2 + (1 - w)*x^2*y^2*z^2";
    let p = parse_poly(family, &v).unwrap();
    let lib =
        badpoint_core::certificates::sample_nonnegativity(&p, &Grid::cube(4, int(-1), int(1), rat(1, 2))).unwrap();
    let (code, out) = machine(&[
        "sample", "--poly", family, "--vars", "w", "x", "y", "z", "--lo", "-1", "--hi", "1", "--step", "1/2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(lib, SampleOutcome::NoCounterexample { points: out["points"].as_u64().unwrap() });
    let r = badpoint(&["sample", "--poly", "x^2 - 1", "--vars", "x", "--lo", "-1", "--hi", "1", "--step", "1"]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "counterexample at (0)\nvalue: -1\n"));
}

#[test]
fn avoid_map_verifies() {
    let (code, out) = machine(&["avoid-map", "--avoid", "i,0,1", "--keep", "1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(out["steps"][0]["min_poly"], "t^2 + 1");
    assert!(out["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn certificate_commands_match_library() {
    let cat = Catalog::load().unwrap();
    let f = write_cert(&Certificate::Sos(inst::g_cert(&cat)));
    let r = badpoint(&["sos-verify", f.path().to_str().unwrap()]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "verified\n"));

    let f = write_cert(&Certificate::AmGm(inst::complex_amgm(&cat)));
    let r = badpoint(&["amgm-verify", f.path().to_str().unwrap()]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "verified\n"));

    let f = write_cert(&Certificate::BadPoint(inst::complex_bad_point(&cat)));
    let r = badpoint(&["bad-point", f.path().to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("conclusion:"));

    let motzkin = cat.poly("motzkin");
    let f = write_cert(&Certificate::NonSos { poly: motzkin.clone(), beta: None });
    let r = badpoint(&["non-sos", "--cert", f.path().to_str().unwrap()]);
    let lib = find_non_sos_obstruction(&motzkin).unwrap().unwrap();
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains(&format!("coefficient: {}", lib.coefficient)));

    // the wrong kind is a usage error
    let r = badpoint(&["cone-verify", f.path().to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error: certificate: "));
}

#[test]
fn cone_and_hat_bad_point_certificates() {
    let cat = Catalog::load().unwrap();
    let hc = HatCoordinates::new(12).unwrap();
    let gens: Vec<TruncSeries> = inst::hat_generators().iter().map(|g| TruncSeries::new(g, 12)).collect();
    let target = badpoint_core::Monomial::from_exps(&[0, 6, 6]);
    let obstruction = badpoint_core::certificates::cone_obstruction_for(&gens, &target).unwrap();
    let f = inst::hat_y6_pullback_f1(&cat, &hc).unwrap();
    let file = write_cert(&Certificate::Cone { obstruction, gens, f });
    let (code, v) = machine(&["cone-verify", file.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["target_coefficient"], "-1");

    let file = write_cert(&Certificate::BadPoint(inst::d_bad_point(&cat, &hc)));
    let r = badpoint(&["bad-point", file.path().to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    for args in [
        vec!["frobnicate"],
        vec!["member", "--ideal", "/nonexistent.ideal", "--poly", "x"],
        vec!["member", "--ideal", &data("ideal-c.ideal"), "--poly", "u +"],
        vec!["sample", "--poly", "x", "--vars", "x", "--lo", "a", "--hi", "1", "--step", "1"],
        vec!["reproduce", "--claims", "no-such-claim"],
    ] {
        let r = badpoint(&args);
        assert_eq!(r.code, 2, "{args:?}");
        assert_eq!(r.stderr.lines().count(), 1, "{args:?}: {}", r.stderr);
        assert!(r.stderr.starts_with("error: "), "{}", r.stderr);
    }
}

#[test]
fn step_budget_env_var_exits_three() {
    let r = badpoint_env(&["gb", "--ideal", &data("ideal-d.ideal")], &[("BADPOINT_STEP_BUDGET", "1")]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.starts_with("error: budget: "));
}

#[test]
fn reproduce_selected_claims() {
    let r = badpoint(&["reproduce", "--claims", "curve-identity,alpha-constants", "--jobs", "2"]);
    assert_eq!(r.code, 0);
    let lib = run_claims(&Filter::parse("curve-identity,alpha-constants"), 1, GbOptions::default()).unwrap();
    assert_eq!(r.stdout, format_text(&lib));
    let r = badpoint(&["reproduce", "--claims", "g-second-identity", "--format", "machine"]);
    assert_eq!(r.code, 1);
    let lib = run_claims(&Filter::parse("g-second-identity"), 1, GbOptions::default()).unwrap();
    assert_eq!(r.stdout, format_json(&lib));
}

fn example_certificates() -> Vec<(&'static str, Certificate)> {
    let cat = Catalog::load().unwrap();
    let gens: Vec<TruncSeries> = inst::hat_generators().iter().map(|g| TruncSeries::new(g, 12)).collect();
    let target = badpoint_core::Monomial::from_exps(&[0, 6, 6]);
    let hc = HatCoordinates::new(12).unwrap();
    vec![
        ("sos-eight-squares", Certificate::Sos(inst::g_cert(&cat))),
        ("amgm-three-terms", Certificate::AmGm(inst::complex_amgm(&cat))),
        ("non-sos-motzkin", Certificate::NonSos { poly: cat.poly("motzkin"), beta: None }),
        (
            "cone-hat-origin",
            Certificate::Cone {
                obstruction: badpoint_core::certificates::cone_obstruction_for(&gens, &target).unwrap(),
                gens,
                f: inst::hat_y6_pullback_f1(&cat, &hc).unwrap(),
            },
        ),
        ("bad-point-curve", Certificate::BadPoint(inst::curve_bad_point(&cat))),
        ("bad-point-complex", Certificate::BadPoint(inst::complex_bad_point(&cat))),
    ]
}

/// `BADPOINT_BLESS=1` rewrites the files.
#[test]
fn example_certificates_are_current() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "examples"].iter().collect();
    let bless = std::env::var_os("BADPOINT_BLESS").is_some();
    for (name, cert) in example_certificates() {
        let path = dir.join(format!("{name}.json"));
        let text = format_certificate(&cert);
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &text).unwrap();
        }
        assert_eq!(std::fs::read_to_string(&path).unwrap(), text, "{name}");
        let cmd = match cert {
            Certificate::Sos(_) => "sos-verify",
            Certificate::AmGm(_) => "amgm-verify",
            Certificate::Cone { .. } => "cone-verify",
            Certificate::BadPoint(_) => "bad-point",
            Certificate::NonSos { .. } => "non-sos",
        };
        let p = path.to_str().unwrap();
        let args: Vec<&str> = if cmd == "non-sos" { vec![cmd, "--cert", p] } else { vec![cmd, p] };
        assert_eq!(badpoint(&args).code, 0, "{name}");
    }
}
