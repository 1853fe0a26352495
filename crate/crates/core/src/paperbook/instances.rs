//! Certificates and derived objects for the cataloged examples.

use crate::certificates::{
    AmGmCert, BadPointCert, ConeReduction, DensityWitness, NonMembership, SosCert, SosItem, SosRing, StructNonneg,
};
use crate::groebner::Ideal;
use crate::poly::{parse_poly, Monomial, Poly, Vars};
use crate::rat::{int, rat, GaussRat, Rat};
use crate::series::{hat_alpha, HatCoordinates, SeriesError, TruncSeries, HAT_VARS};

use super::catalog::Catalog;

/// Truncation order of every series computation in the suite.
pub const HAT_TRUNC: u32 = 48;

pub fn hat_vars() -> Vars {
    Vars::new(&HAT_VARS)
}

fn hp(text: &str) -> Poly {
    parse_poly(text, &hat_vars()).expect("static text")
}

fn p(text: &str, vars: &Vars) -> Poly {
    parse_poly(text, vars).expect("static text")
}

/// The pulled-back curve generators written in `xh, yh^8, zh^2`.
pub fn hat_generators() -> [Poly; 3] {
    [hp("xh^6 + yh^8*zh^2"), hp("yh^16 + xh^2*zh^2"), hp("zh^4 - xh^4*yh^8")]
}

/// The same generators as polynomials in `a = xh`, `b = yh^8`, `c = zh^2`.
pub fn hat_generator_shapes() -> (Vars, [Poly; 3]) {
    let v = Vars::parse("a b c");
    let gens = [p("a^6 + b*c", &v), p("b^2 + a^2*c", &v), p("c^2 - a^4*b", &v)];
    (v, gens)
}

/// `phi^* f1` rewritten in hat coordinates, where `u = xh^2`, `v = yh^8`,
/// `w = -zh^2` hold exactly.
pub fn hat_pullback_f1(cat: &Catalog) -> Poly {
    cat.poly("f1").compose(&[hp("xh^2"), hp("yh^8"), hp("-zh^2")]).expect("three images")
}

pub fn hat_images(hc: &HatCoordinates) -> Vec<TruncSeries> {
    hc.images().expect("hat images")
}

/// `y` as a series in the hat variables.
fn y_series(hc: &HatCoordinates) -> TruncSeries {
    hc.y_of_yh.embed(&hat_vars()).expect("embeds")
}

/// First summand: `-yh^6 phi^*f1 + g1^2 + yh^4 g2^2`, a polynomial.
pub fn g_target(cat: &Catalog) -> Poly {
    let [g1, g2, _] = hat_generators();
    let pf = hat_pullback_f1(cat);
    &(&(-&(&hp("yh^6") * &pf)) + &(&g1 * &g1)) + &(&hp("yh^4") * &(&g2 * &g2))
}

/// The product form displayed for the first summand.
pub fn g_product_form() -> Poly {
    hp("(xh^2 - yh^6)^2*(xh^8 + xh^6*yh^6 + xh^4*yh^12 + xh^2*yh^18 + yh^24 + 2*xh^2*yh^8*zh^2) \
        + zh^2*yh^4*(xh^4 + yh^2*zh^2)*(yh^10 + zh^2)")
}

/// Explicit squares for the first summand. The sextic factor splits as
/// `(a^2 + a b/2)^2 + 3/4 (a b + 2/3 b^2)^2 + 2/3 b^4` with `a = xh^2`,
/// `b = yh^6`, and the second product expands into monomial squares.
pub fn g_cert(cat: &Catalog) -> SosCert {
    let d = hp("xh^2 - yh^6");
    let sq = |c: Rat, root: Poly| SosItem::new(StructNonneg::scalar(c), root);
    SosCert {
        ring: SosRing::Polynomial,
        target: g_target(cat).into(),
        items: vec![
            sq(int(1), &d * &hp("xh^4 + 1/2*xh^2*yh^6")),
            sq(rat(3, 4), &d * &hp("xh^2*yh^6 + 2/3*yh^12")),
            sq(rat(2, 3), &d * &hp("yh^12")),
            sq(int(2), &d * &hp("xh*yh^4*zh")),
            sq(int(1), hp("xh^2*yh^7*zh")),
            sq(int(1), hp("xh^2*yh^2*zh^2")),
            sq(int(1), hp("yh^8*zh^2")),
            sq(int(1), hp("yh^3*zh^3")),
        ],
    }
}

/// Second summand `(y^4 - yh^4) g2^2` through degree `n`.
pub fn g_prime_target(hc: &HatCoordinates, n: u32) -> TruncSeries {
    let [_, g2, _] = hat_generators();
    let y = y_series(hc);
    let yh4 = TruncSeries::new(&hp("yh^4"), n);
    (&y.pow(4).with_trunc(n) - &yh4).mul_poly(&(&g2 * &g2)).expect("same ring")
}

/// `(1/4) (yh^3 g2)^2 + (s g2)^2` with `s^2 = y^4 - yh^4 - yh^6/4`.
pub fn g_prime_cert(n: u32) -> Result<SosCert, SeriesError> {
    let [_, g2, _] = hat_generators();
    let m = n + 6;
    let hc = HatCoordinates::new(m)?;
    let y = y_series(&hc);
    let q = &(&y.pow(4) - &TruncSeries::new(&hp("yh^4"), m)) - &TruncSeries::new(&hp("1/4*yh^6"), m);
    let unit = q.div_monomial(&Monomial::from_exps(&[0, 6, 0]))?.scale(&int(4)).with_trunc(n);
    let s = unit.nth_root_unit(2)?.mul_monomial(&Monomial::from_exps(&[0, 3, 0])).scale(&rat(1, 2));
    Ok(SosCert {
        ring: SosRing::Truncated(n),
        target: g_prime_target(&hc, n).into(),
        items: vec![
            SosItem::new(StructNonneg::scalar(rat(1, 4)), &hp("yh^3") * &g2),
            SosItem::new(StructNonneg::one(), s.mul_poly(&g2)?.with_trunc(n)),
        ],
    })
}

/// Third summand `(yh^6 - y^6) phi^*f1 + g1^2 + g3^2` through degree `n`.
pub fn g_second_target(cat: &Catalog, hc: &HatCoordinates, n: u32) -> TruncSeries {
    let [g1, _, g3] = hat_generators();
    let y = y_series(hc);
    let diff = &TruncSeries::new(&hp("yh^6"), n) - &y.pow(6).with_trunc(n);
    let rest = TruncSeries::new(&(&(&g1 * &g1) + &(&g3 * &g3)), n);
    &diff.mul_poly(&hat_pullback_f1(cat)).expect("same ring") + &rest
}

/// The third summand's decomposition as stated:
/// `alpha xh^2 g2^2 + (g1 - alpha g3 / 2)^2 + (1 - alpha^2/4) g3^2`, which
/// re-expands to `alpha (xh^2 g2^2 - g3 g1) + g1^2 + g3^2`.
pub fn g_second_cert(cat: &Catalog, hc: &HatCoordinates, n: u32) -> Result<SosCert, SeriesError> {
    let [g1, g2, g3] = hat_generators();
    let alpha = hat_alpha(n)?;
    let a0 = alpha.constant_term();
    let r1 = alpha.scale(&a0.recip()).nth_root_unit(2)?.mul_poly(&(&hp("xh") * &g2))?;
    let r2 = &TruncSeries::new(&g1, n) - &alpha.scale(&rat(1, 2)).mul_poly(&g3)?;
    let rest = &TruncSeries::one(&hat_vars(), n) - &(&alpha * &alpha).scale(&rat(1, 4));
    let c0 = rest.constant_term();
    let r3 = rest.scale(&c0.recip()).nth_root_unit(2)?.mul_poly(&g3)?;
    Ok(SosCert {
        ring: SosRing::Truncated(n),
        target: g_second_target(cat, hc, n).into(),
        items: vec![
            SosItem::new(StructNonneg::scalar(a0), r1),
            SosItem::new(StructNonneg::one(), r2),
            SosItem::new(StructNonneg::scalar(c0), r3),
        ],
    })
}

/// `-alpha (xh^2 g2^2 - g3 g1) + g1^2 + g3^2`, the expansion that does equal
/// the third summand.
pub fn g_second_rewrite(n: u32) -> Result<TruncSeries, SeriesError> {
    let [g1, g2, g3] = hat_generators();
    let alpha = hat_alpha(n)?;
    let inner = &(&(&hp("xh^2") * &g2) * &g2) - &(&g3 * &g1);
    let squares = TruncSeries::new(&(&(&g1 * &g1) + &(&g3 * &g3)), n);
    Ok(&squares - &alpha.mul_poly(&inner)?)
}

/// `y^6 phi^* f1` in hat coordinates.
pub fn hat_y6_pullback_f1(cat: &Catalog, hc: &HatCoordinates) -> Result<TruncSeries, SeriesError> {
    let x = cat.ideal("ideal-d").vars().clone();
    let core = &p("y^6", &x) * &cat.pullback("phi", &cat.poly("f1"));
    TruncSeries::compose_poly(&core, &hat_images(hc))
}

pub fn complex_amgm(cat: &Catalog) -> AmGmCert {
    let f = cat.poly("f-complex");
    let v = f.vars().clone();
    AmGmCert {
        terms: vec![
            StructNonneg::square(p("x^5", &v)),
            StructNonneg::square(p("x*y^3", &v)),
            StructNonneg::square(p("z^2 + 1", &v)).times_atom(p("z", &v), int(1)),
        ],
        mean: StructNonneg::square(p("x^2*y", &v)).times_atom(p("z", &v), int(1)),
        target: f,
    }
}

fn real_point(coords: &[i64]) -> Vec<Rat> {
    coords.iter().map(|&c| int(c)).collect()
}

pub fn curve_bad_point(cat: &Catalog) -> BadPointCert {
    BadPointCert {
        ideal: cat.ideal("ideal-c"),
        f: cat.poly("f1"),
        point: vec![GaussRat::zero(); 3],
        non_membership: NonMembership::OrderBound,
        density: vec![DensityWitness { point: real_point(&[1, 1, 1]), rank: 2 }],
    }
}

pub fn complex_bad_point(cat: &Catalog) -> BadPointCert {
    BadPointCert {
        ideal: cat.ideal("ideal-gamma"),
        f: cat.poly("f-complex"),
        point: vec![GaussRat::zero(), GaussRat::zero(), GaussRat::i()],
        non_membership: NonMembership::Localized,
        density: vec![DensityWitness { point: real_point(&[1, 1, 0]), rank: 2 }],
    }
}

/// `f2 - (2 g1^2 + y^4 g2^2 + g3^2) = -y^6 phi^* f1`.
pub fn d_bad_point(cat: &Catalog, hc: &HatCoordinates) -> BadPointCert {
    let ideal = cat.ideal("ideal-d");
    let v = ideal.vars().clone();
    BadPointCert {
        f: cat.poly("f2"),
        point: vec![GaussRat::zero(); 3],
        non_membership: NonMembership::Cone(ConeReduction {
            combination: vec![(0, 0, p("2", &v)), (1, 1, p("y^4", &v)), (2, 2, p("1", &v))],
            core: -&(&p("y^6", &v) * &cat.pullback("phi", &cat.poly("f1"))),
            images: hat_images(hc),
            target: Monomial::from_exps(&[0, 6, 6]),
        }),
        density: vec![DensityWitness { point: real_point(&[1, 1, 1]), rank: 2 }],
        ideal,
    }
}

/// Cofactors `c_ij` with `h f2 = sum c_ij d_i d_j` over the generators
/// `d_i` of the pulled-back ideal, from `v f1 = u g2^2 - g3 g1`.
pub fn h_f2_square_combination(cat: &Catalog) -> Vec<(usize, usize, Poly)> {
    let v = cat.ideal("ideal-d").vars().clone();
    let h = cat.poly("h");
    vec![(0, 0, h.scale(&int(2))), (1, 1, &(&p("y^4", &v) * &h) - &p("x^2*y^6", &v)), (2, 2, h), (0, 2, p("y^6", &v))]
}

pub fn combination_value(ideal: &Ideal, combo: &[(usize, usize, Poly)]) -> Poly {
    let g = ideal.gens();
    combo.iter().fold(Poly::zero(ideal.vars()), |acc, (i, j, c)| &acc + &(&(c * &g[*i]) * &g[*j]))
}

/// `f(w0, 1, y, z)` for the four-variable family member.
pub fn motzkin_specialization(cat: &Catalog, w0: &Rat) -> Poly {
    let v = Vars::parse("y z");
    let images = [Poly::constant(&v, w0.clone()), Poly::one(&v), Poly::var_at(&v, 0), Poly::var_at(&v, 1)];
    cat.poly("motzkin-family").compose(&images).expect("four images")
}

/// `x^6 + (w y z^2)^2 + (w y^2 z)^2 + (sqrt(1 - w) x y z)^2` through degree `n`.
pub fn family_series_cert(cat: &Catalog, n: u32) -> Result<SosCert, SeriesError> {
    let f = cat.poly("motzkin-family");
    let v = f.vars().clone();
    let root = TruncSeries::new(&p("1 - w", &v), n).nth_root_unit(2)?;
    Ok(SosCert {
        ring: SosRing::Truncated(n),
        target: f.into(),
        items: vec![
            SosItem::new(StructNonneg::one(), p("x^3", &v)),
            SosItem::new(StructNonneg::one(), p("w*y*z^2", &v)),
            SosItem::new(StructNonneg::one(), p("w*y^2*z", &v)),
            SosItem::new(StructNonneg::one(), root.mul_poly(&p("x*y*z", &v))?),
        ],
    })
}

/// Sum-of-squares attempts built from the square monomials of `target`:
/// first its positive ones, then all of them with absolute coefficients.
pub fn sos_attempts(target: &Poly) -> Vec<SosCert> {
    let v = target.vars().clone();
    let squares: Vec<(Poly, Rat)> = target
        .terms()
        .filter(|(m, _)| m.exps().iter().all(|e| e % 2 == 0))
        .map(|(m, c)| {
            let half: Vec<u32> = m.exps().iter().map(|e| e / 2).collect();
            (Poly::term(&v, Monomial::from_exps(&half), int(1)), c.clone())
        })
        .collect();
    let positive = squares
        .iter()
        .filter(|(_, c)| *c > int(0))
        .map(|(r, c)| SosItem::new(StructNonneg::scalar(c.clone()), r.clone()))
        .collect();
    let absolute = squares
        .iter()
        .filter(|(_, c)| *c != int(0))
        .map(|(r, c)| SosItem::new(StructNonneg::scalar(if *c < int(0) { -c } else { c.clone() }), r.clone()))
        .collect();
    [positive, absolute]
        .into_iter()
        .map(|items| SosCert { ring: SosRing::Polynomial, target: target.clone().into(), items })
        .collect()
}
