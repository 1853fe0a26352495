//! Argument handling and output for the `badpoint` binary. Every subcommand
//! parses its inputs, calls one library operation and prints the result.

use std::fmt::Write as _;

use badpoint_core::certificates::json::{parse_certificate, Certificate};
use badpoint_core::certificates::{
    birational_avoid, find_non_sos_obstruction, sample_nonnegativity, verify_amgm, verify_avoid_map, verify_bad_point,
    verify_cone_obstruction, verify_non_sos, verify_sos, AmGmVerdict, CertError, Grid, NonSosObstruction,
    SampleOutcome, SosVerdict,
};
use badpoint_core::groebner::{
    dimension, ideal_product, ideal_quotient, member_localized, normal_form, parse_ideal_file, GbError, GbOptions,
    Ideal, LocalMembership, MonOrder, DEFAULT_STEP_BUDGET,
};
use badpoint_core::paperbook::{format_json, format_text, run_claims, Filter, RunError};
use badpoint_core::rat::{fmt_rat, parse_rat, GaussRat, Rat};
use badpoint_core::series::{adic_decompose, SeriesError, TruncSeries};
use badpoint_core::{parse_poly, Poly, Vars};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Parser, Debug)]
#[command(name = "badpoint", version, about = "Exact ideal, power-series and positivity-certificate computations")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Maximum number of S-polynomial reductions per basis computation.
    #[arg(long, global = true, env = "BADPOINT_STEP_BUDGET", default_value_t = DEFAULT_STEP_BUDGET)]
    pub step_budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Gröbner basis of an ideal file.
    Gb {
        #[arg(long)]
        ideal: String,
        /// grevlex, lex or elim:K (default: the file's `order:` header, else grevlex).
        #[arg(long)]
        order: Option<String>,
    },
    /// Decide whether a polynomial lies in an ideal.
    Member {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Ideal quotient (I : f).
    Quotient {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Membership after localizing at a point (with its conjugate).
    MemberLocal {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
        /// Comma-separated Gaussian rationals, e.g. `0,0,i`.
        #[arg(long)]
        point: String,
        /// Test membership in the square of the ideal.
        #[arg(long)]
        square: bool,
    },
    /// Krull dimension of the quotient ring.
    Dim {
        #[arg(long)]
        ideal: String,
    },
    /// Hessian entries and determinant of a polynomial or of one of its minors.
    Hessian {
        #[arg(long)]
        poly: String,
        #[arg(long, num_args = 1..)]
        vars: Vec<String>,
        /// Row indices of a square minor, e.g. `0,1`.
        #[arg(long, requires = "cols")]
        rows: Option<String>,
        #[arg(long, requires = "rows")]
        cols: Option<String>,
        /// Reduce every entry and the determinant modulo this ideal file.
        #[arg(long)]
        modulo: Option<String>,
    },
    /// Verify a sum-of-squares certificate (JSON).
    SosVerify { cert: String },
    /// Verify an AM-GM certificate (JSON).
    AmgmVerify { cert: String },
    /// Search for and verify a Newton-polytope corner obstruction.
    NonSos {
        #[arg(long, conflicts_with = "cert")]
        poly: Option<String>,
        #[arg(long, num_args = 1.., requires = "poly")]
        vars: Vec<String>,
        /// A `non_sos` certificate instead of --poly.
        #[arg(long)]
        cert: Option<String>,
    },
    /// Verify a cone obstruction (JSON).
    ConeVerify { cert: String },
    /// Complete sum x_i^2 + g to squares through degree N.
    Adic {
        #[arg(long)]
        series: String,
        #[arg(long, num_args = 1..)]
        vars: Vec<String>,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        trunc: u32,
    },
    /// n-th root of a series with constant term 1.
    SeriesRoot {
        #[arg(long)]
        series: String,
        #[arg(long, num_args = 1..)]
        vars: Vec<String>,
        #[arg(long)]
        root: u32,
        #[arg(long)]
        trunc: u32,
    },
    /// Compositional inverse of a one-variable series.
    Revert {
        #[arg(long)]
        series: String,
        #[arg(long)]
        var: String,
        #[arg(long)]
        trunc: u32,
    },
    /// Exact evaluation on a grid, looking for a negative value.
    Sample {
        #[arg(long)]
        poly: String,
        #[arg(long, num_args = 1..)]
        vars: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
        #[arg(long)]
        step: String,
    },
    /// Birational map of affine space missing the --avoid points and
    /// isomorphic near the --keep points.
    AvoidMap {
        #[arg(long, required = true, allow_hyphen_values = true)]
        avoid: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        keep: Vec<String>,
    },
    /// Verify a bad-point certificate (JSON).
    BadPoint { cert: String },
    /// Run the claim suite.
    Reproduce {
        /// `all` or comma-separated claim ids.
        #[arg(long, default_value = "all")]
        claims: String,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

/// Everything a run produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failure with its exit status and a one-line `error: kind: message` reason.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, kind: "usage", message: msg.into() }
}

impl From<GbError> for Failure {
    fn from(e: GbError) -> Self {
        match e {
            GbError::BudgetExceeded { .. } => Failure { code: EXIT_BUDGET, kind: "budget", message: e.to_string() },
            _ => Failure { code: EXIT_USAGE, kind: "input", message: e.to_string() },
        }
    }
}

impl From<CertError> for Failure {
    fn from(e: CertError) -> Self {
        match e {
            CertError::Gb(g) => g.into(),
            CertError::Malformed(_) => Failure { code: EXIT_USAGE, kind: "certificate", message: e.to_string() },
            _ => Failure { code: EXIT_USAGE, kind: "input", message: e.to_string() },
        }
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        Failure { code: EXIT_USAGE, kind: "input", message: e.to_string() }
    }
}

impl From<RunError> for Failure {
    fn from(e: RunError) -> Self {
        Failure { code: EXIT_USAGE, kind: "claims", message: e.to_string() }
    }
}

/// Stdout text and exit status of a completed command.
struct Done {
    code: i32,
    text: String,
    machine: Value,
}

fn done(ok: bool, text: String, machine: Value) -> Result<Done, Failure> {
    Ok(Done { code: if ok { EXIT_OK } else { EXIT_FAILED }, text, machine })
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure { code: EXIT_USAGE, kind: "io", message: format!("{path}: {e}") })
}

fn load_ideal(path: &str) -> Result<(Ideal, Option<MonOrder>), Failure> {
    let f = parse_ideal_file(&read(path)?).map_err(|e| usage(format!("{path}: {e}")))?;
    Ok((f.ideal, f.order))
}

fn vars_arg(v: &[String]) -> Result<Vars, Failure> {
    let vars = Vars::parse(&v.join(" "));
    if vars.is_empty() {
        return Err(usage("--vars is required"));
    }
    Ok(vars)
}

fn poly_arg(text: &str, vars: &Vars) -> Result<Poly, Failure> {
    parse_poly(text, vars).map_err(|e| Failure { code: EXIT_USAGE, kind: "parse", message: e.to_string() })
}

fn rat_arg(text: &str) -> Result<Rat, Failure> {
    parse_rat(text).ok_or_else(|| usage(format!("not a rational: `{text}`")))
}

fn point_arg(text: &str) -> Result<Vec<GaussRat>, Failure> {
    text.split(',').map(|t| t.trim().parse::<GaussRat>().map_err(|e| usage(e.to_string()))).collect()
}

fn indices(text: &str, n: usize) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if i < n => Ok(i),
            _ => Err(usage(format!("bad index `{t}` (need 0..{n})"))),
        })
        .collect()
}

fn show_point(p: &[GaussRat]) -> String {
    format!("({})", p.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn show_rats(p: &[Rat]) -> String {
    format!("({})", p.iter().map(fmt_rat).collect::<Vec<_>>().join(", "))
}

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn basis_text(ideal: &Ideal) -> String {
    let b = ideal.basis().expect("computed basis");
    let mut s = format!("vars: {}\norder: {}\n", ideal.vars().names().join(" "), ideal.order().expect("order"));
    for g in b {
        let _ = writeln!(s, "{g}");
    }
    s
}

fn basis_json(ideal: &Ideal) -> Value {
    json!({
        "vars": ideal.vars().names(),
        "order": ideal.order().expect("order").to_string(),
        "basis": strings(ideal.basis().expect("computed basis")),
    })
}

fn gb(opts: GbOptions, path: &str, order: Option<&str>) -> Result<Done, Failure> {
    let (ideal, file_order) = load_ideal(path)?;
    let order = match order {
        Some(o) => o.parse::<MonOrder>().map_err(|e| usage(e.to_string()))?,
        None => file_order.unwrap_or_default(),
    };
    let g = ideal.groebner_with(order, opts)?;
    done(true, basis_text(&g), basis_json(&g))
}

fn member(opts: GbOptions, path: &str, poly: &str) -> Result<Done, Failure> {
    let (ideal, _) = load_ideal(path)?;
    let f = poly_arg(poly, ideal.vars())?;
    let g = ideal.groebner_with(MonOrder::Grevlex, opts)?;
    let w = normal_form(&f, &g)?;
    let m = w.is_member();
    let text = if m { "member\n".to_string() } else { format!("not member\nremainder: {}\n", w.remainder) };
    done(m, text, json!({ "member": m, "remainder": w.remainder.to_string() }))
}

fn quotient(opts: GbOptions, path: &str, poly: &str) -> Result<Done, Failure> {
    let (ideal, _) = load_ideal(path)?;
    let f = poly_arg(poly, ideal.vars())?;
    let q = ideal_quotient(&ideal, &f, opts)?;
    done(true, basis_text(&q), basis_json(&q))
}

fn member_local(opts: GbOptions, path: &str, poly: &str, point: &str, square: bool) -> Result<Done, Failure> {
    let (ideal, _) = load_ideal(path)?;
    let f = poly_arg(poly, ideal.vars())?;
    let pt = point_arg(point)?;
    if pt.len() != ideal.vars().len() {
        return Err(usage(format!("point has {} coordinates, ring has {}", pt.len(), ideal.vars().len())));
    }
    let target = if square { ideal_product(&ideal, &ideal)? } else { ideal };
    let (m, q) = member_localized(&f, &target, &pt, opts)?;
    let qb = strings(q.basis().expect("computed basis"));
    match m {
        LocalMembership::Member { witness, value } => done(
            true,
            format!("member\nwitness: {witness}\nvalue at {}: {value}\n", show_point(&pt)),
            json!({ "member": true, "witness": witness.to_string(), "value": value.to_string(), "quotient": qb }),
        ),
        LocalMembership::NotMember { .. } => done(
            false,
            format!("not member\nquotient basis vanishing at {}:\n{}\n", show_point(&pt), qb.join("\n")),
            json!({ "member": false, "quotient": qb }),
        ),
    }
}

fn dim(opts: GbOptions, path: &str) -> Result<Done, Failure> {
    let (ideal, _) = load_ideal(path)?;
    let d = dimension(&ideal.groebner_with(MonOrder::Grevlex, opts)?)?;
    done(true, format!("dimension: {d}\n"), json!({ "dimension": d }))
}

fn det(m: &[Vec<Poly>], vars: &Vars) -> Poly {
    if m.is_empty() {
        return Poly::one(vars);
    }
    // cofactor expansion along the first row; minors here are at most 3x3
    let mut acc = Poly::zero(vars);
    for (j, a) in m[0].iter().enumerate() {
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = a * &det(&minor, vars);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn hessian(
    opts: GbOptions,
    poly: &str,
    vars: &[String],
    rows: Option<&str>,
    cols: Option<&str>,
    modulo: Option<&str>,
) -> Result<Done, Failure> {
    let vars = vars_arg(vars)?;
    let f = poly_arg(poly, &vars)?;
    let h = f.hessian();
    let n = vars.len();
    let (ri, ci) = match (rows, cols) {
        (Some(r), Some(c)) => (indices(r, n)?, indices(c, n)?),
        _ => ((0..n).collect(), (0..n).collect()),
    };
    if ri.len() != ci.len() {
        return Err(usage("minor must be square"));
    }
    let mut m: Vec<Vec<Poly>> = ri.iter().map(|&i| ci.iter().map(|&j| h[i][j].clone()).collect()).collect();
    let mut d = det(&m, &vars);
    if let Some(path) = modulo {
        let (ideal, _) = load_ideal(path)?;
        if ideal.vars() != &vars {
            return Err(usage("ideal file declares different variables"));
        }
        let g = ideal.groebner_with(MonOrder::Grevlex, opts)?;
        for row in &mut m {
            for e in row.iter_mut() {
                *e = normal_form(e, &g)?.remainder;
            }
        }
        d = normal_form(&d, &g)?.remainder;
    }
    let mut text = String::new();
    for (a, row) in ri.iter().zip(&m) {
        for (b, e) in ci.iter().zip(row) {
            let _ = writeln!(text, "H[{a}][{b}] = {e}");
        }
    }
    let _ = writeln!(text, "det = {d}");
    let entries: Vec<Vec<String>> = m.iter().map(|r| strings(r)).collect();
    done(true, text, json!({ "rows": ri, "cols": ci, "entries": entries, "det": d.to_string() }))
}

fn load_cert(path: &str, kind: &str) -> Result<Certificate, Failure> {
    let c = parse_certificate(&read(path)?)?;
    let actual = match &c {
        Certificate::Sos(_) => "sos",
        Certificate::AmGm(_) => "amgm",
        Certificate::NonSos { .. } => "non_sos",
        Certificate::Cone { .. } => "cone",
        Certificate::BadPoint(_) => "bad_point",
    };
    if actual != kind {
        return Err(Failure {
            code: EXIT_USAGE,
            kind: "certificate",
            message: format!("expected a `{kind}` certificate, found `{actual}`"),
        });
    }
    Ok(c)
}

fn sos_verify(path: &str) -> Result<Done, Failure> {
    let Certificate::Sos(c) = load_cert(path, "sos")? else { unreachable!() };
    match verify_sos(&c)? {
        SosVerdict::Ok => done(true, "verified\n".into(), json!({ "verified": true })),
        SosVerdict::Fail { residual } => done(
            false,
            format!("not verified\nresidual: {residual}\n"),
            json!({ "verified": false, "residual": residual.to_string() }),
        ),
    }
}

fn amgm_verify(path: &str) -> Result<Done, Failure> {
    let Certificate::AmGm(c) = load_cert(path, "amgm")? else { unreachable!() };
    match verify_amgm(&c)? {
        AmGmVerdict::Ok => done(true, "verified\n".into(), json!({ "verified": true })),
        AmGmVerdict::Fail(why) => {
            done(false, format!("not verified\nreason: {why}\n"), json!({ "verified": false, "reason": why }))
        }
    }
}

fn obstruction_output(o: Option<NonSosObstruction>) -> Result<Done, Failure> {
    let Some(o) = o else {
        return done(false, "no obstruction found\n".into(), json!({ "obstruction": null }));
    };
    let vars = o.poly.vars().clone();
    let corner = Poly::term(&vars, o.corner.clone(), Rat::from_integer(1.into()));
    let beta = Poly::term(&vars, o.beta.clone(), Rat::from_integer(1.into()));
    let ok = verify_non_sos(&o)?;
    let text = format!(
        "obstruction at {corner}\ncoefficient: {}\nhalf corner: {beta}\nhalf-support points: {}\nverified: {ok}\n",
        fmt_rat(&o.coefficient),
        o.support.len()
    );
    let machine = json!({
        "obstruction": {
            "corner": corner.to_string(),
            "coefficient": fmt_rat(&o.coefficient),
            "beta": o.beta.exps(),
            "support": o.support.to_vecs(),
            "verified": ok,
        }
    });
    done(ok, text, machine)
}

fn non_sos(poly: Option<&str>, vars: &[String], cert: Option<&str>) -> Result<Done, Failure> {
    let (p, beta) = match (poly, cert) {
        (Some(text), None) => (poly_arg(text, &vars_arg(vars)?)?, None),
        (None, Some(path)) => match load_cert(path, "non_sos")? {
            Certificate::NonSos { poly, beta } => (poly, beta),
            _ => unreachable!(),
        },
        _ => return Err(usage("give --poly with --vars, or --cert")),
    };
    let found = find_non_sos_obstruction(&p)?;
    let found = match (found, beta) {
        (Some(o), Some(b)) if o.beta != b => {
            return done(
                false,
                format!(
                    "obstruction found at a different corner: {}\n",
                    o.corner.exps().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
                ),
                json!({ "obstruction": null, "reason": "corner differs from certificate" }),
            )
        }
        (f, _) => f,
    };
    obstruction_output(found)
}

fn cone_verify(path: &str) -> Result<Done, Failure> {
    let Certificate::Cone { obstruction, gens, f } = load_cert(path, "cone")? else { unreachable!() };
    let r = verify_cone_obstruction(&obstruction, &gens, &f)?;
    let ok = r.is_ok();
    let offending: Vec<Value> =
        r.offending.iter().map(|(i, j, m)| json!({ "i": i, "j": j, "monomial": m.exps() })).collect();
    let text = format!(
        "{}\ntarget coefficient: {}\nproducts checked: {}\noffending monomials: {}\nstored supports match: {}\n",
        if ok { "verified" } else { "not verified" },
        fmt_rat(&r.target_coefficient),
        r.products_checked,
        r.offending.len(),
        r.stored_supports_match
    );
    done(
        ok,
        text,
        json!({
            "verified": ok,
            "target_coefficient": fmt_rat(&r.target_coefficient),
            "products_checked": r.products_checked,
            "offending": offending,
            "stored_supports_match": r.stored_supports_match,
        }),
    )
}

fn series_arg(text: &str, vars: &[String], trunc: u32) -> Result<TruncSeries, Failure> {
    let v = vars_arg(vars)?;
    Ok(TruncSeries::new(&poly_arg(text, &v)?, trunc))
}

fn adic(series: &str, vars: &[String], rank: usize, trunc: u32) -> Result<Done, Failure> {
    let g = series_arg(series, vars, trunc)?;
    let r = adic_decompose(&g, rank, trunc)?;
    let names = g.vars().names();
    let mut text = String::new();
    for (p, a) in r.pivots.iter().zip(&r.a) {
        let _ = writeln!(text, "a[{}] = {a}", names[*p]);
    }
    let _ = writeln!(text, "b = {}", r.b);
    let _ = writeln!(text, "verified through degree {}", r.verified_to);
    let a: Vec<Value> =
        r.pivots.iter().zip(&r.a).map(|(p, a)| json!({ "var": names[*p], "series": a.body().to_string() })).collect();
    done(true, text, json!({ "a": a, "b": r.b.body().to_string(), "trunc": r.verified_to }))
}

fn series_root(series: &str, vars: &[String], root: u32, trunc: u32) -> Result<Done, Failure> {
    let s = series_arg(series, vars, trunc)?.nth_root_unit(root)?;
    done(true, format!("{s}\n"), json!({ "series": s.body().to_string(), "trunc": s.trunc() }))
}

fn revert(series: &str, var: &str, trunc: u32) -> Result<Done, Failure> {
    let s = series_arg(series, &[var.to_string()], trunc)?.reversion()?;
    done(true, format!("{s}\n"), json!({ "series": s.body().to_string(), "trunc": s.trunc() }))
}

fn sample(poly: &str, vars: &[String], lo: &str, hi: &str, step: &str) -> Result<Done, Failure> {
    let v = vars_arg(vars)?;
    let p = poly_arg(poly, &v)?;
    let grid = Grid::cube(v.len(), rat_arg(lo)?, rat_arg(hi)?, rat_arg(step)?);
    match sample_nonnegativity(&p, &grid)? {
        SampleOutcome::NoCounterexample { points } => done(
            true,
            format!("no counterexample\npoints evaluated: {points}\n"),
            json!({ "counterexample": null, "points": points }),
        ),
        SampleOutcome::Counterexample { point, value } => {
            let pt: Vec<String> = point.iter().map(fmt_rat).collect();
            done(
                false,
                format!("counterexample at {}\nvalue: {}\n", show_rats(&point), fmt_rat(&value)),
                json!({ "counterexample": { "point": pt, "value": fmt_rat(&value) } }),
            )
        }
    }
}

fn avoid_map(avoid: &[String], keep: &[String]) -> Result<Done, Failure> {
    let a: Vec<Vec<GaussRat>> = avoid.iter().map(|s| point_arg(s)).collect::<Result<_, _>>()?;
    let k: Vec<Vec<GaussRat>> = keep.iter().map(|s| point_arg(s)).collect::<Result<_, _>>()?;
    let n = a[0].len();
    if a.iter().chain(&k).any(|p| p.len() != n) {
        return Err(usage("all points need the same number of coordinates"));
    }
    let map = birational_avoid(&a, &k)?;
    let report = verify_avoid_map(&map, &a, &k);
    let vars = Vars::new(&(1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>());
    let comps = map.components(&vars);
    let mut text = String::new();
    let mut steps = Vec::new();
    for (i, s) in map.steps.iter().enumerate() {
        let rows: Vec<Vec<String>> = s.matrix.iter().map(|r| r.iter().map(fmt_rat).collect()).collect();
        let _ = writeln!(text, "step {}: avoids {}", i + 1, show_point(&s.avoided));
        let _ = writeln!(text, "  P(t) = {}", s.min_poly);
        for r in &rows {
            let _ = writeln!(text, "  [{}]", r.join(" "));
        }
        let _ = writeln!(text, "  shift {}", show_rats(&s.shift));
        steps.push(json!({
            "avoided": s.avoided.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "min_poly": s.min_poly.to_string(),
            "matrix": rows,
            "shift": s.shift.iter().map(fmt_rat).collect::<Vec<_>>(),
        }));
    }
    for (v, c) in vars.names().iter().zip(&comps) {
        let _ = writeln!(text, "{v} -> {c}");
    }
    for (line, ok) in &report.lines {
        let _ = writeln!(text, "{} {line}", if *ok { "ok  " } else { "FAIL" });
    }
    let checks: Vec<Value> = report.lines.iter().map(|(l, ok)| json!({ "check": l, "passed": ok })).collect();
    done(report.is_ok(), text, json!({ "steps": steps, "components": strings(&comps), "checks": checks }))
}

fn bad_point(opts: GbOptions, path: &str) -> Result<Done, Failure> {
    let Certificate::BadPoint(c) = load_cert(path, "bad_point")? else { unreachable!() };
    let r = verify_bad_point(&c, opts)?;
    let mut text = String::new();
    for c in &r.checks {
        let _ = writeln!(text, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    if let Some(c) = &r.conclusion {
        let _ = writeln!(text, "conclusion: {c}");
    }
    let checks: Vec<Value> =
        r.checks.iter().map(|c| json!({ "check": c.name, "passed": c.passed, "detail": c.detail })).collect();
    done(r.is_ok(), text, json!({ "verified": r.is_ok(), "checks": checks, "conclusion": r.conclusion }))
}

fn reproduce(opts: GbOptions, claims: &str, jobs: usize, format: Format) -> Result<Done, Failure> {
    let report = run_claims(&Filter::parse(claims), jobs, opts)?;
    let code = if report.budget_exceeded() {
        EXIT_BUDGET
    } else if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    // the report documents are already final; wrap them so `emit` prints them as is
    let text = match format {
        Format::Text => format_text(&report),
        Format::Machine => format_json(&report),
    };
    Ok(Done { code, text: text.clone(), machine: Value::String(text) })
}

fn dispatch(cli: &Cli) -> Result<Done, Failure> {
    let opts = GbOptions { step_budget: cli.step_budget, ..GbOptions::default() };
    match &cli.command {
        Command::Gb { ideal, order } => gb(opts, ideal, order.as_deref()),
        Command::Member { ideal, poly } => member(opts, ideal, poly),
        Command::Quotient { ideal, poly } => quotient(opts, ideal, poly),
        Command::MemberLocal { ideal, poly, point, square } => member_local(opts, ideal, poly, point, *square),
        Command::Dim { ideal } => dim(opts, ideal),
        Command::Hessian { poly, vars, rows, cols, modulo } => {
            hessian(opts, poly, vars, rows.as_deref(), cols.as_deref(), modulo.as_deref())
        }
        Command::SosVerify { cert } => sos_verify(cert),
        Command::AmgmVerify { cert } => amgm_verify(cert),
        Command::NonSos { poly, vars, cert } => non_sos(poly.as_deref(), vars, cert.as_deref()),
        Command::ConeVerify { cert } => cone_verify(cert),
        Command::Adic { series, vars, rank, trunc } => adic(series, vars, *rank, *trunc),
        Command::SeriesRoot { series, vars, root, trunc } => series_root(series, vars, *root, *trunc),
        Command::Revert { series, var, trunc } => revert(series, var, *trunc),
        Command::Sample { poly, vars, lo, hi, step } => sample(poly, vars, lo, hi, step),
        Command::AvoidMap { avoid, keep } => avoid_map(avoid, keep),
        Command::BadPoint { cert } => bad_point(opts, cert),
        Command::Reproduce { claims, jobs } => reproduce(opts, claims, *jobs, cli.format),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Output { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() }
                }
                _ => {
                    let first =
                        e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
                    Output { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: usage: {first}\n") }
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(d) => {
            let stdout = match (cli.format, &cli.command) {
                (_, Command::Reproduce { .. }) | (Format::Text, _) => d.text,
                (Format::Machine, _) => {
                    let mut s = serde_json::to_string_pretty(&d.machine).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            Output { code: d.code, stdout, stderr: String::new() }
        }
        Err(f) => Output {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}: {}\n", f.kind, f.message.replace('\n', " ")),
        },
    }
}
