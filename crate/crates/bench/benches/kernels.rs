use std::hint::black_box;

use badpoint_core::certificates::{sample_nonnegativity, verify_sos, Grid};
use badpoint_core::groebner::MonOrder;
use badpoint_core::paperbook::instances as inst;
use badpoint_core::paperbook::Catalog;
use badpoint_core::rat::{int, rat};
use badpoint_core::series::{adic_decompose, HatCoordinates, TruncSeries};
use badpoint_core::{parse_poly, Vars};
use criterion::{criterion_group, criterion_main, Criterion};

fn groebner(c: &mut Criterion) {
    let cat = Catalog::load().unwrap();
    let mut g = c.benchmark_group("groebner");
    for id in ["ideal-c", "ideal-gamma", "ideal-d"] {
        let ideal = cat.ideal(id);
        g.bench_function(id, |b| b.iter(|| black_box(ideal.groebner(MonOrder::Grevlex).unwrap())));
    }
    g.finish();
}

fn series(c: &mut Criterion) {
    let cat = Catalog::load().unwrap();
    let pulled = cat.pullback("phi", &cat.poly("f1"));
    c.bench_function("hat coordinates at 24", |b| b.iter(|| black_box(HatCoordinates::new(24).unwrap())));
    let hc = HatCoordinates::new(48).unwrap();
    c.bench_function("hat change of pullback at 48", |b| b.iter(|| black_box(hc.apply(&pulled).unwrap())));
    let v = Vars::parse("x y z");
    let g = TruncSeries::new(&parse_poly("x^2*y + y*z^2 - 3*x*z^3 + 5*y^7", &v).unwrap(), 12);
    c.bench_function("adic decomposition r = 3 at 12", |b| b.iter(|| black_box(adic_decompose(&g, 3, 12).unwrap())));
}

fn certificates(c: &mut Criterion) {
    let cat = Catalog::load().unwrap();
    let cert = inst::g_cert(&cat);
    c.bench_function("verify eight-square certificate", |b| b.iter(|| black_box(verify_sos(&cert).unwrap())));
    let f = cat.poly("motzkin-family");
    let grid = Grid::cube(4, int(-2), int(2), rat(1, 2));
    c.bench_function("sample four-variable family, step 1/2", |b| {
        b.iter(|| black_box(sample_nonnegativity(&f, &grid).unwrap()))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = groebner, series, certificates
}
criterion_main!(benches);
