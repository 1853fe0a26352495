//! The bad-point pipeline: `f` lies in `I`, not in `I^2` near a point of the
//! zero set of `I`, and the zero set has smooth real points. When real points
//! are Zariski dense in that zero set, such an `f` is not a sum of squares in
//! the local ring at the point. Density is witnessed here, not proved.

use num_traits::Zero;

use super::{cone_obstruction_for, verify_cone_obstruction, CertError};
use crate::groebner::{
    dimension, gauss_rank, ideal_product, jacobian_rank_at, local_order_bound, member_localized, normal_form,
    GbOptions, Ideal, LocalMembership, MonOrder, OrderBound,
};
use crate::poly::{Monomial, Poly};
use crate::rat::{GaussRat, Rat};
use crate::series::TruncSeries;

/// A real point of the zero set with the Jacobian rank expected at a smooth point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityWitness {
    pub point: Vec<Rat>,
    pub rank: usize,
}

/// Non-membership in the completed local ring at the origin: `f` minus an
/// explicit element of `I^2` is `core`, and after the coordinate change
/// `images` the monomial `target` appears in `core` but in no product of two
/// generators.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeReduction {
    /// Terms `(i, j, c)` with `f - sum c * g_i * g_j = core`.
    pub combination: Vec<(usize, usize, Poly)>,
    pub core: Poly,
    /// Images of the original variables as series in the new coordinates.
    pub images: Vec<TruncSeries>,
    pub target: Monomial,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NonMembership {
    /// Ideal quotient `(I^2 : f)` vanishes at the point.
    Localized,
    /// `ord(f) < 2 * min ord(g_i)` at the origin.
    OrderBound,
    Cone(ConeReduction),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BadPointCert {
    pub ideal: Ideal,
    pub f: Poly,
    pub point: Vec<GaussRat>,
    pub non_membership: NonMembership,
    pub density: Vec<DensityWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPointReport {
    pub checks: Vec<CheckLine>,
    /// Present only when every check passed.
    pub conclusion: Option<String>,
}

impl BadPointReport {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn line(name: &str, passed: bool, detail: impl Into<String>) -> CheckLine {
    CheckLine { name: name.into(), passed, detail: detail.into() }
}

fn is_origin(p: &[GaussRat]) -> bool {
    p.iter().all(GaussRat::is_zero)
}

/// Runs every sub-check and reports each one. Errors from a sub-check are
/// recorded as a failed line.
pub fn verify_bad_point(c: &BadPointCert, opts: GbOptions) -> Result<BadPointReport, CertError> {
    let gens = c.ideal.gens();
    let vars = c.ideal.vars().clone();
    if c.f.vars() != &vars {
        return Err(CertError::RingMismatch("f and the ideal live in different rings".into()));
    }
    if c.point.len() != vars.len() {
        return Err(CertError::Malformed(format!("point has {} coordinates, ring has {}", c.point.len(), vars.len())));
    }
    let mut checks = Vec::new();

    let on_variety = gens.iter().map(|g| g.evaluate(&c.point)).collect::<Result<Vec<_>, _>>()?;
    let zero = on_variety.iter().all(GaussRat::is_zero);
    checks.push(line(
        "point on zero set",
        zero,
        if zero {
            "all generators vanish".into()
        } else {
            format!("values {:?}", on_variety.iter().map(ToString::to_string).collect::<Vec<_>>())
        },
    ));

    let basis = c.ideal.groebner_with(MonOrder::Grevlex, opts)?;
    let nf = normal_form(&c.f, &basis)?;
    let member = nf.is_member() && nf.check(basis.basis().expect("computed"));
    checks.push(line("f in I", member, format!("remainder {}", nf.remainder)));

    checks.push(match &c.non_membership {
        NonMembership::Localized => {
            let square = ideal_product(&c.ideal, &c.ideal)?;
            match member_localized(&c.f, &square, &c.point, opts) {
                Ok((LocalMembership::NotMember { evaluations }, _)) => line(
                    "f not in I^2 near point",
                    true,
                    format!("all {} quotient basis elements vanish at the point", evaluations.len()),
                ),
                Ok((LocalMembership::Member { witness, value }, _)) => {
                    line("f not in I^2 near point", false, format!("quotient element {witness} takes value {value}"))
                }
                Err(e) => line("f not in I^2 near point", false, e.to_string()),
            }
        }
        NonMembership::OrderBound => {
            if !is_origin(&c.point) {
                line("f not in I^2 near point", false, "order bound applies only at the origin")
            } else {
                match local_order_bound(&c.f, gens)? {
                    OrderBound::Obstruction { ord, bound } => {
                        line("f not in I^2 near point", true, format!("ord f = {ord} < {bound}"))
                    }
                    OrderBound::Inconclusive { ord, bound } => {
                        line("f not in I^2 near point", false, format!("ord f = {ord} >= {bound}"))
                    }
                }
            }
        }
        NonMembership::Cone(r) => cone_check(c, r)?,
    });

    let dim = dimension(&basis)?;
    let expected_rank = vars.len() - dim;
    for (k, w) in c.density.iter().enumerate() {
        let name = format!("real smooth point {}", k + 1);
        let pt: Vec<GaussRat> = w.point.iter().cloned().map(GaussRat::real).collect();
        checks.push(match jacobian_rank_at(gens, &pt) {
            Ok(rank) => line(
                &name,
                rank == w.rank && rank == expected_rank,
                format!("Jacobian rank {rank}, claimed {}, codimension {expected_rank}", w.rank),
            ),
            Err(e) => line(&name, false, e.to_string()),
        });
    }
    if c.density.is_empty() {
        checks.push(line("real smooth point", false, "no density witness supplied"));
    }

    let all = checks.iter().all(|l| l.passed);
    let conclusion = all.then(|| {
        "f is not a sum of squares in the local ring at the point, assuming real points are Zariski dense in \
         the zero set of I (witnessed above by smooth real points)"
            .to_string()
    });
    Ok(BadPointReport { checks, conclusion })
}

fn cone_check(c: &BadPointCert, r: &ConeReduction) -> Result<CheckLine, CertError> {
    const NAME: &str = "f not in I^2 near point";
    let gens = c.ideal.gens();
    if !is_origin(&c.point) {
        return Ok(line(NAME, false, "cone obstruction applies only at the origin"));
    }
    let mut rest = c.f.clone();
    for (i, j, cof) in &r.combination {
        let (Some(gi), Some(gj)) = (gens.get(*i), gens.get(*j)) else {
            return Ok(line(NAME, false, format!("generator index ({i}, {j}) out of range")));
        };
        rest = &rest - &(&(cof * gi) * gj);
    }
    if rest != r.core {
        return Ok(line(NAME, false, "f minus the stated element of I^2 is not the core"));
    }
    let n = c.ideal.vars().len();
    if r.images.len() != n {
        return Ok(line(NAME, false, format!("{} images for {n} variables", r.images.len())));
    }
    // the coordinate change must be an automorphism of the completed local ring
    let mut linear = Vec::with_capacity(n);
    for img in &r.images {
        if !img.constant_term().is_zero() {
            return Ok(line(NAME, false, "coordinate image with nonzero constant term"));
        }
        linear.push((0..img.arity()).map(|k| GaussRat::real(img.coeff(&Monomial::var(img.arity(), k)))).collect());
    }
    if r.images[0].arity() != n || gauss_rank(linear) != n {
        return Ok(line(NAME, false, "coordinate change is not invertible"));
    }
    let new_gens: Vec<TruncSeries> =
        gens.iter().map(|g| TruncSeries::compose_poly(g, &r.images)).collect::<Result<_, _>>()?;
    let core = TruncSeries::compose_poly(&r.core, &r.images)?;
    let cert = cone_obstruction_for(&new_gens, &r.target)?;
    let rep = verify_cone_obstruction(&cert, &new_gens, &core)?;
    Ok(line(
        NAME,
        rep.is_ok(),
        format!(
            "coefficient {} at {:?}; {} products checked, {} dividing",
            rep.target_coefficient,
            r.target.exps(),
            rep.products_checked,
            rep.offending.len()
        ),
    ))
}
