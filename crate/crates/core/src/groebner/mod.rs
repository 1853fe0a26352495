//! Ideals in polynomial rings over `Q`: Gröbner bases, membership with
//! cofactors, products, quotients, localized membership, dimension.

mod basis;
mod io;
mod order;

pub use basis::{buchberger, leading_monomial, s_polynomial, GbOptions, DEFAULT_STEP_BUDGET};
pub use io::{format_ideal_file, parse_ideal_file, IdealFile};
pub use order::{MonOrder, ParseOrderError};

use crate::poly::{Monomial, Poly, PolyError, Vars};
use crate::rat::{GaussRat, Rat};
use basis::{is_one, reduce, SortedPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GbError {
    #[error("step budget exceeded after {steps} S-polynomial reductions")]
    BudgetExceeded { steps: u64 },
    #[error("ideal has no cached Gröbner basis")]
    NoBasis,
    #[error("ideal has no generators")]
    NoGenerators,
    #[error("operation undefined for the unit ideal")]
    UnitIdeal,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("point is not on the variety: generator {index} ({poly}) evaluates to {value}")]
    NotOnVariety { index: usize, poly: String, value: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Generators plus an optional cached reduced basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    vars: Vars,
    gens: Vec<Poly>,
    basis: Option<(MonOrder, Vec<Poly>)>,
}

fn same_ring(vars: &Vars, p: &Poly) -> Result<(), PolyError> {
    if p.vars() != vars {
        return Err(PolyError::ArityMismatch {
            left: vars.len(),
            right: p.arity(),
            left_vars: vars.names().to_vec(),
            right_vars: p.vars().names().to_vec(),
        });
    }
    Ok(())
}

impl Ideal {
    pub fn new(vars: &Vars, gens: Vec<Poly>) -> Result<Self, GbError> {
        for g in &gens {
            same_ring(vars, g)?;
        }
        Ok(Self { vars: vars.clone(), gens, basis: None })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn basis(&self) -> Option<&[Poly]> {
        self.basis.as_ref().map(|(_, b)| b.as_slice())
    }

    pub fn order(&self) -> Option<MonOrder> {
        self.basis.as_ref().map(|(o, _)| *o)
    }

    fn cached(&self) -> Result<(MonOrder, &[Poly]), GbError> {
        self.basis.as_ref().map(|(o, b)| (*o, b.as_slice())).ok_or(GbError::NoBasis)
    }

    /// Returns a copy carrying the reduced basis under `order`.
    pub fn groebner(&self, order: MonOrder) -> Result<Ideal, GbError> {
        self.groebner_with(order, GbOptions::default())
    }

    pub fn groebner_with(&self, order: MonOrder, opts: GbOptions) -> Result<Ideal, GbError> {
        if self.gens.is_empty() {
            return Err(GbError::NoGenerators);
        }
        if let Some((o, _)) = &self.basis {
            if *o == order {
                return Ok(self.clone());
            }
        }
        let b = buchberger(&self.gens, &self.vars, order, opts)?;
        Ok(Ideal { vars: self.vars.clone(), gens: self.gens.clone(), basis: Some((order, b)) })
    }

    /// True if the cached basis is `{1}`.
    pub fn is_unit(&self) -> Result<bool, GbError> {
        let (_, b) = self.cached()?;
        Ok(b.len() == 1 && is_one(&b[0]))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool, GbError> {
        Ok(normal_form(f, self)?.remainder.is_zero())
    }
}

/// Exact division of `target` by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipWitness {
    pub target: Poly,
    pub cofactors: Vec<Poly>,
    pub remainder: Poly,
}

impl MembershipWitness {
    pub fn is_member(&self) -> bool {
        self.remainder.is_zero()
    }

    /// Re-multiplies the identity `target = sum c_i b_i + remainder`.
    pub fn check(&self, basis: &[Poly]) -> bool {
        if basis.len() != self.cofactors.len() {
            return false;
        }
        let mut acc = self.remainder.clone();
        for (c, b) in self.cofactors.iter().zip(basis) {
            match c.try_mul(b).and_then(|p| acc.try_add(&p)) {
                Ok(s) => acc = s,
                Err(_) => return false,
            }
        }
        acc == self.target
    }
}

/// Division of `f` by the cached basis of `ideal`.
pub fn normal_form(f: &Poly, ideal: &Ideal) -> Result<MembershipWitness, GbError> {
    let (order, basis) = ideal.cached()?;
    same_ring(&ideal.vars, f)?;
    let divisors: Vec<SortedPoly> = basis.iter().map(|b| SortedPoly::new(b, order)).collect();
    let red = reduce(&SortedPoly::new(f, order), &divisors, order, true);
    let cofactors = red
        .cofactors
        .expect("tracked")
        .into_iter()
        .map(|terms| {
            let mut p = Poly::zero(&ideal.vars);
            for (m, c) in terms {
                p = &p + &Poly::term(&ideal.vars, m, c);
            }
            p
        })
        .collect();
    Ok(MembershipWitness { target: f.clone(), cofactors, remainder: red.remainder.to_poly(&ideal.vars) })
}

/// Checks that every S-polynomial of `basis` reduces to zero.
pub fn satisfies_buchberger_criterion(basis: &[Poly], order: MonOrder) -> bool {
    let divisors: Vec<SortedPoly> = basis.iter().map(|b| SortedPoly::new(b, order)).collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = SortedPoly::new(&s_polynomial(&basis[i], &basis[j], order), order);
            if !reduce(&s, &divisors, order, false).remainder.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Checks the reduced-basis shape: monic, and no term of any element is
/// divisible by the leading monomial of another.
pub fn is_reduced_basis(basis: &[Poly], order: MonOrder) -> bool {
    let lms: Vec<Option<Monomial>> = basis.iter().map(|b| leading_monomial(b, order)).collect();
    for (i, b) in basis.iter().enumerate() {
        let Some(lm) = &lms[i] else { return false };
        if b.coeff(lm) != Rat::from_integer(1.into()) {
            return false;
        }
        for (j, other) in lms.iter().enumerate() {
            let other = other.as_ref().expect("nonzero");
            if i != j && b.terms().any(|(m, _)| other.divides(m)) {
                return false;
            }
        }
    }
    true
}

/// Ideal generated by all pairwise products of generators.
pub fn ideal_product(a: &Ideal, b: &Ideal) -> Result<Ideal, GbError> {
    if a.vars != b.vars {
        return Err(PolyError::ArityMismatch {
            left: a.vars.len(),
            right: b.vars.len(),
            left_vars: a.vars.names().to_vec(),
            right_vars: b.vars.names().to_vec(),
        }
        .into());
    }
    let mut gens: Vec<Poly> = Vec::new();
    for g in &a.gens {
        for h in &b.gens {
            let p = g * h;
            if !p.is_zero() && !gens.contains(&p) {
                gens.push(p);
            }
        }
    }
    Ideal::new(&a.vars, gens)
}

fn fresh_name(vars: &Vars) -> String {
    let mut name = String::from("_t");
    while vars.index(&name).is_some() {
        name.push('_');
    }
    name
}

/// `(I : f)`, computed as `(I ∩ <f>) / f` where the intersection comes from
/// eliminating `t` in `t*I + (1-t)*<f>`. The result carries its reduced
/// grevlex basis.
pub fn ideal_quotient(ideal: &Ideal, f: &Poly, opts: GbOptions) -> Result<Ideal, GbError> {
    if f.is_zero() {
        return Err(GbError::ZeroPolynomial);
    }
    same_ring(&ideal.vars, f)?;
    if ideal.gens.is_empty() {
        return Err(GbError::NoGenerators);
    }
    let ext = ideal.vars.prepend(&fresh_name(&ideal.vars));
    let t = Poly::var_at(&ext, 0);
    let one_minus_t = &Poly::one(&ext) - &t;
    let mut gens: Vec<Poly> = Vec::with_capacity(ideal.gens.len() + 1);
    for g in &ideal.gens {
        gens.push(&t * &g.embed(&ext)?);
    }
    gens.push(&one_minus_t * &f.embed(&ext)?);
    let elim = buchberger(&gens, &ext, MonOrder::Elimination(1), opts)?;
    let mut quotient_gens = Vec::new();
    for g in elim.iter().filter(|g| !g.uses_var(0)) {
        quotient_gens.push(g.restrict(&ideal.vars)?.div_exact(f)?);
    }
    Ideal::new(&ideal.vars, quotient_gens)?.groebner_with(MonOrder::Grevlex, opts)
}

/// Outcome of a localized membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalMembership {
    /// `witness` lies in `(I : f)` and does not vanish at the point.
    Member { witness: Poly, value: GaussRat },
    /// Every basis element of `(I : f)` vanishes at the point.
    NotMember { evaluations: Vec<(Poly, GaussRat)> },
}

impl LocalMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, LocalMembership::Member { .. })
    }
}

/// Decides `f ∈ I` localized at the maximal ideal of `point` (together with
/// its conjugate, since all data is rational): true iff some element of
/// `(I : f)` is nonzero at the point.
pub fn member_localized(
    f: &Poly,
    ideal: &Ideal,
    point: &[GaussRat],
    opts: GbOptions,
) -> Result<(LocalMembership, Ideal), GbError> {
    if f.is_zero() {
        return Err(GbError::ZeroPolynomial);
    }
    if ideal.basis.is_some() && ideal.is_unit()? {
        return Err(GbError::UnitIdeal);
    }
    let q = ideal_quotient(ideal, f, opts)?;
    let (_, basis) = q.cached()?;
    let mut evaluations = Vec::with_capacity(basis.len());
    for g in basis {
        let v = g.evaluate(point)?;
        if !v.is_zero() {
            return Ok((LocalMembership::Member { witness: g.clone(), value: v }, q));
        }
        evaluations.push((g.clone(), v));
    }
    Ok((LocalMembership::NotMember { evaluations }, q))
}

/// Comparison of `ord(f)` with twice the least generator order at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderBound {
    /// `ord(f) < bound`: `f` is not in the square of the ideal localized at the origin.
    Obstruction {
        ord: u32,
        bound: u32,
    },
    Inconclusive {
        ord: u32,
        bound: u32,
    },
}

pub fn local_order_bound(f: &Poly, gens: &[Poly]) -> Result<OrderBound, GbError> {
    let ord = f.order().ok_or(GbError::ZeroPolynomial)?;
    if gens.is_empty() {
        return Err(GbError::NoGenerators);
    }
    let mut min = u32::MAX;
    for g in gens {
        same_ring(f.vars(), g)?;
        min = min.min(g.order().ok_or(GbError::ZeroPolynomial)?);
    }
    let bound = 2 * min;
    Ok(if ord < bound { OrderBound::Obstruction { ord, bound } } else { OrderBound::Inconclusive { ord, bound } })
}

/// Krull dimension of the quotient ring: the size of a largest set of
/// variables containing the support of no leading monomial.
pub fn dimension(ideal: &Ideal) -> Result<usize, GbError> {
    if ideal.is_unit()? {
        return Err(GbError::UnitIdeal);
    }
    let (order, basis) = ideal.cached()?;
    let n = ideal.vars.len();
    let supports: Vec<u64> = basis
        .iter()
        .map(|b| {
            let lm = leading_monomial(b, order).expect("basis elements are nonzero");
            (0..n).filter(|&i| lm.exp(i) > 0).fold(0u64, |acc, i| acc | (1 << i))
        })
        .collect();
    let mut best = 0;
    for set in 0u64..(1 << n) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    Ok(best)
}

/// Rank over `Q(i)` of the Jacobian of `gens` at a common zero.
pub fn jacobian_rank_at(gens: &[Poly], point: &[GaussRat]) -> Result<usize, GbError> {
    for (index, g) in gens.iter().enumerate() {
        let v = g.evaluate(point)?;
        if !v.is_zero() {
            return Err(GbError::NotOnVariety { index, poly: g.to_string(), value: v.to_string() });
        }
    }
    let mut rows: Vec<Vec<GaussRat>> = Vec::with_capacity(gens.len());
    for g in gens {
        rows.push(g.gradient().iter().map(|d| d.evaluate(point)).collect::<Result<_, _>>()?);
    }
    Ok(gauss_rank(rows))
}

pub(crate) fn gauss_rank(mut rows: Vec<Vec<GaussRat>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().expect("nonzero pivot");
        for r in rank + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let factor = &rows[r][c] * &inv;
            for k in c..cols {
                let d = &factor * &rows[rank][k];
                rows[r][k] = &rows[r][k] - &d;
            }
        }
        rank += 1;
    }
    rank
}
