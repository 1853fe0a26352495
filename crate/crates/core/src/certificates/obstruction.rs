//! Support obstructions: a negative corner coefficient that no sum of
//! squares can produce, and a monomial that no element of an ideal square
//! can contain.

use num_traits::{Signed, Zero};

use super::CertError;
use crate::poly::{newton_half_support, ExponentSet, Monomial, Poly};
use crate::rat::Rat;
use crate::series::TruncSeries;

/// `poly` has a negative coefficient at `corner = 2 * beta`, and `beta + beta`
/// is the only way to write `corner` as a sum of two half-Newton points.
/// In any `sum h_i^2 = poly` that coefficient would be `sum_i h_i[beta]^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonSosObstruction {
    pub poly: Poly,
    pub support: ExponentSet,
    pub beta: Monomial,
    pub corner: Monomial,
    pub coefficient: Rat,
    /// All pairs `(b1, b2)`, `b1 <= b2`, of support points with `b1 + b2 = corner`.
    pub decompositions: Vec<(Monomial, Monomial)>,
}

fn decompositions(support: &ExponentSet, corner: &Monomial) -> Vec<(Monomial, Monomial)> {
    let mut out = Vec::new();
    for b1 in support.iter() {
        if let Some(b2) = corner.div(b1) {
            if b1 <= &b2 && support.contains(&b2) {
                out.push((b1.clone(), b2));
            }
        }
    }
    out
}

/// Scans the half-Newton support in increasing order. `None` is
/// inconclusive: it does not mean `p` is a sum of squares.
pub fn find_non_sos_obstruction(p: &Poly) -> Result<Option<NonSosObstruction>, CertError> {
    if p.is_zero() {
        return Err(CertError::ZeroPolynomial);
    }
    let support = newton_half_support(p)?;
    for beta in support.iter() {
        let corner = beta.pow(2);
        let coefficient = p.coeff(&corner);
        if !coefficient.is_negative() {
            continue;
        }
        let decomps = decompositions(&support, &corner);
        if decomps.len() == 1 {
            return Ok(Some(NonSosObstruction {
                poly: p.clone(),
                support: support.clone(),
                beta: beta.clone(),
                corner,
                coefficient,
                decompositions: decomps,
            }));
        }
    }
    Ok(None)
}

/// Recomputes the support, coefficient and pair audit from `o.poly`.
pub fn verify_non_sos(o: &NonSosObstruction) -> Result<bool, CertError> {
    if o.poly.is_zero() {
        return Err(CertError::ZeroPolynomial);
    }
    let support = newton_half_support(&o.poly)?;
    if o.beta.arity() != o.poly.arity() {
        return Ok(false);
    }
    let corner = o.beta.pow(2);
    let coefficient = o.poly.coeff(&corner);
    let decomps = decompositions(&support, &corner);
    Ok(support == o.support
        && support.contains(&o.beta)
        && corner == o.corner
        && coefficient == o.coefficient
        && coefficient.is_negative()
        && decomps == vec![(o.beta.clone(), o.beta.clone())]
        && decomps == o.decompositions)
}

/// Support of `g_i * g_j` up to the degree of the target monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSupport {
    pub i: usize,
    pub j: usize,
    pub support: ExponentSet,
}

/// `target` lies outside `m + N^n` for every monomial `m` of every product
/// `g_i g_j`, so its coefficient vanishes on the whole ideal square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeObstruction {
    pub target: Monomial,
    pub products: Vec<ProductSupport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReport {
    pub target_coefficient: Rat,
    /// Product monomials dividing the target, as `(i, j, m)`.
    pub offending: Vec<(usize, usize, Monomial)>,
    pub products_checked: usize,
    /// Whether the stored supports equal the recomputed ones. Informational.
    pub stored_supports_match: bool,
}

impl ConeReport {
    pub fn is_ok(&self) -> bool {
        !self.target_coefficient.is_zero() && self.offending.is_empty()
    }
}

fn product_supports(gens: &[TruncSeries], target: &Monomial) -> Result<Vec<ProductSupport>, CertError> {
    let d = target.degree();
    let Some(first) = gens.first() else {
        return Err(CertError::Malformed("no generators".into()));
    };
    for g in gens {
        if g.vars() != first.vars() || g.arity() != target.arity() {
            return Err(CertError::RingMismatch("generators and target live in different rings".into()));
        }
        if g.trunc() < d {
            return Err(CertError::TruncationTooSmall { have: g.trunc(), need: d });
        }
    }
    let mut out = Vec::new();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let prod = (&gens[i] * &gens[j]).with_trunc(d);
            let mut support = ExponentSet::new(target.arity());
            for (m, _) in prod.body().terms() {
                support.insert(m.clone());
            }
            out.push(ProductSupport { i, j, support });
        }
    }
    Ok(out)
}

/// Builds the certificate by expanding every product through `deg(target)`.
pub fn cone_obstruction_for(gens: &[TruncSeries], target: &Monomial) -> Result<ConeObstruction, CertError> {
    Ok(ConeObstruction { target: target.clone(), products: product_supports(gens, target)? })
}

pub fn verify_cone_obstruction(
    c: &ConeObstruction,
    gens: &[TruncSeries],
    f: &TruncSeries,
) -> Result<ConeReport, CertError> {
    let d = c.target.degree();
    if f.trunc() < d {
        return Err(CertError::TruncationTooSmall { have: f.trunc(), need: d });
    }
    if f.arity() != c.target.arity() || gens.first().is_some_and(|g| g.vars() != f.vars()) {
        return Err(CertError::RingMismatch("series and target live in different rings".into()));
    }
    let products = product_supports(gens, &c.target)?;
    let mut offending = Vec::new();
    for p in &products {
        for m in p.support.iter() {
            if m.divides(&c.target) {
                offending.push((p.i, p.j, m.clone()));
            }
        }
    }
    Ok(ConeReport {
        target_coefficient: f.coeff(&c.target),
        offending,
        products_checked: products.len(),
        stored_supports_match: products == c.products,
    })
}
