//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Poly`] carries its own ordered variable list. Two polynomials can only
//! be combined when their variable lists agree; use [`Poly::embed`] to move a
//! polynomial into a larger ring first. The term map never stores a zero
//! coefficient, so structural equality is mathematical equality.

mod monomial;
pub mod newton;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

pub(crate) use monomial::grevlex_slices;
pub use monomial::Monomial;
pub use newton::{newton_half_support, ExponentSet};
pub use parse::{parse_poly, ParseError};

use crate::rat::{fmt_rat, GaussRat, Rat};

/// Ordered list of variable names shared by the polynomials of one ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    /// Splits on whitespace or commas: `"x y z"`, `"x,y,z"`.
    pub fn parse(list: &str) -> Self {
        let names: Vec<&str> = list.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
        Self::new(&names)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    /// A new list with `name` prepended.
    pub fn prepend(&self, name: &str) -> Vars {
        let mut v = vec![name.to_string()];
        v.extend(self.0.iter().cloned());
        Vars(v.into())
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Errors of the polynomial kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("arity mismatch: {left} variables {left_vars:?} vs {right} variables {right_vars:?}")]
    ArityMismatch { left: usize, right: usize, left_vars: Vec<String>, right_vars: Vec<String> },
    #[error("point has {found} coordinates, polynomial has {expected} variables")]
    PointArity { expected: usize, found: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no image given for variable `{0}`")]
    MissingImage(String),
    #[error("images do not share a common ring")]
    ImageRingMismatch,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("exact division failed: divisor does not divide dividend")]
    NotDivisible,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Binary ring operation selector for [`Poly::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// Sparse polynomial over `Q` in a fixed, named set of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(vars: &Vars) -> Self {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self, PolyError> {
        let i = vars.index(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(vars, i))
    }

    pub fn var_at(vars: &Vars, index: usize) -> Self {
        Self::term(vars, Monomial::var(vars.len(), index), Rat::one())
    }

    pub fn term(vars: &Vars, mono: Monomial, c: Rat) -> Self {
        assert_eq!(mono.arity(), vars.len(), "monomial arity differs from variable count");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(vars: &Vars, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.arity(), vars.len(), "monomial arity differs from variable count");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in the internal (lexicographic, ascending) map order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rat> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff_exps(&self, exps: &[u32]) -> Rat {
        self.coeff(&Monomial::from_exps(exps))
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one(self.arity()))
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(index)).max().unwrap_or(0)
    }

    /// True if variable `index` occurs in some term.
    pub fn uses_var(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.exp(index) > 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
                left_vars: self.vars.names().to_vec(),
                right_vars: other.vars.names().to_vec(),
            })
        }
    }

    pub fn arith(&self, other: &Poly, kind: ArithKind) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        Ok(match kind {
            ArithKind::Add => {
                let mut r = self.clone();
                for (m, c) in &other.terms {
                    r.add_term(m.clone(), c.clone());
                }
                r
            }
            ArithKind::Sub => {
                let mut r = self.clone();
                for (m, c) in &other.terms {
                    r.add_term(m.clone(), -c.clone());
                }
                r
            }
            ArithKind::Mul => self.mul_bounded(other, None),
        })
    }

    /// Product, discarding terms of total degree above `max_degree` if given.
    pub(crate) fn mul_bounded(&self, other: &Poly, max_degree: Option<u32>) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &other.terms {
                if let Some(n) = max_degree {
                    if da + mb.degree() > n {
                        continue;
                    }
                }
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.arith(other, ArithKind::Add)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.arith(other, ArithKind::Sub)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.arith(other, ArithKind::Mul)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Keeps only the terms of total degree `<= n`.
    pub fn truncate(&self, n: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= n).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Re-expresses `self` in a ring whose variable list contains all of ours.
    pub fn embed(&self, target: &Vars) -> Result<Poly, PolyError> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index(n).ok_or_else(|| PolyError::UnknownVariable(n.clone())))
            .collect::<Result<_, _>>()?;
        let mut r = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &j) in map.iter().enumerate() {
                e[j] = m.exp(i);
            }
            r.add_term(Monomial::from_exps(&e), c.clone());
        }
        Ok(r)
    }

    /// Moves `self` into a ring with fewer variables, failing if a dropped
    /// variable occurs.
    pub fn restrict(&self, target: &Vars) -> Result<Poly, PolyError> {
        for (i, name) in self.vars.names().iter().enumerate() {
            if target.index(name).is_none() && self.uses_var(i) {
                return Err(PolyError::UnknownVariable(name.clone()));
            }
        }
        let mut r = Poly::zero(target);
        for (m, c) in &self.terms {
            let e: Vec<u32> = target.names().iter().map(|n| self.vars.index(n).map_or(0, |i| m.exp(i))).collect();
            r.add_term(Monomial::from_exps(&e), c.clone());
        }
        Ok(r)
    }

    /// Pullback along a polynomial map: variable `i` is replaced by `images[i]`.
    /// All images must live in one common ring.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        self.compose_bounded(images, None)
    }

    /// [`Poly::compose`], discarding terms above `max_degree` at every step.
    pub(crate) fn compose_bounded(&self, images: &[Poly], max_degree: Option<u32>) -> Result<Poly, PolyError> {
        if images.len() != self.arity() {
            let missing = self.vars.names().get(images.len()).cloned().unwrap_or_default();
            return Err(PolyError::MissingImage(missing));
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        if images.iter().any(|p| p.vars != target) {
            return Err(PolyError::ImageRingMismatch);
        }
        let mut cache: Vec<Vec<Poly>> = vec![vec![Poly::one(&target)]; self.arity()];
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap().mul_bounded(&images[i], max_degree);
                    cache[i].push(next);
                }
                t = t.mul_bounded(&cache[i][e as usize], max_degree);
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Substitution by variable name. Variables of `self` that do not occur
    /// may be omitted from `images`; used variables must be present.
    pub fn substitute(&self, images: &BTreeMap<String, Poly>) -> Result<Poly, PolyError> {
        let target = match images.values().next() {
            Some(p) => p.vars.clone(),
            None if self.is_constant() => return Ok(self.clone()),
            None => {
                let i = (0..self.arity()).find(|&i| self.uses_var(i)).unwrap();
                return Err(PolyError::MissingImage(self.vars.names()[i].clone()));
            }
        };
        let mut list = Vec::with_capacity(self.arity());
        for (i, name) in self.vars.names().iter().enumerate() {
            match images.get(name) {
                Some(p) => list.push(p.clone()),
                None if !self.uses_var(i) => list.push(Poly::zero(&target)),
                None => return Err(PolyError::MissingImage(name.clone())),
            }
        }
        self.compose(&list)
    }

    /// Exact value at a point of `Q(i)^n`.
    pub fn evaluate(&self, point: &[GaussRat]) -> Result<GaussRat, PolyError> {
        if point.len() != self.arity() {
            return Err(PolyError::PointArity { expected: self.arity(), found: point.len() });
        }
        let mut powers: Vec<Vec<GaussRat>> = vec![vec![GaussRat::one()]; point.len()];
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = GaussRat::real(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &point[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Exact value at a rational point.
    pub fn eval_rat(&self, point: &[Rat]) -> Result<Rat, PolyError> {
        if point.len() != self.arity() {
            return Err(PolyError::PointArity { expected: self.arity(), found: point.len() });
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn derivative(&self, var: &str) -> Result<Poly, PolyError> {
        let i = self.vars.index(var).ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        Ok(self.derivative_at(i))
    }

    pub fn derivative_at(&self, index: usize) -> Poly {
        let mut r = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(index);
            if e > 0 {
                r.add_term(m.with_exp(index, e - 1), c * Rat::from_integer(e.into()));
            }
        }
        r
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.arity()).map(|i| self.derivative_at(i)).collect()
    }

    /// Matrix of second partial derivatives, indexed by variable position.
    pub fn hessian(&self) -> Vec<Vec<Poly>> {
        let grad = self.gradient();
        (0..self.arity()).map(|i| (0..self.arity()).map(|j| grad[i].derivative_at(j)).collect()).collect()
    }

    /// Exact quotient `self / d`, failing unless the division is exact.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(d)?;
        if d.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let lead = |p: &Poly| p.terms.iter().max_by(|a, b| a.0.grevlex_cmp(b.0)).map(|(m, c)| (m.clone(), c.clone()));
        let (dm, dc) = lead(d).unwrap();
        let mut rem = self.clone();
        let mut q = Poly::zero(&self.vars);
        while let Some((m, c)) = lead(&rem) {
            let t = m.div(&dm).ok_or(PolyError::NotDivisible)?;
            let k = &c / &dc;
            rem = &rem - &d.mul_monomial(&t, &k);
            q.add_term(t, k);
        }
        Ok(q)
    }

    /// Terms in canonical display order: grevlex, largest first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grevlex_cmp(a.0));
        v
    }

    /// Canonical text in the polynomial grammar.
    pub fn format(&self) -> String {
        self.to_string()
    }
}

fn fmt_monomial(vars: &Vars, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (name, &e) in vars.names().iter().zip(m.exps()) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rat(&a))?;
            } else if a.is_one() {
                write!(f, "{}", fmt_monomial(&self.vars, m))?;
            } else {
                write!(f, "{}*{}", fmt_rat(&a), fmt_monomial(&self.vars, m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.names().join(","), self)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.try_add(o).expect("polynomial ring mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self.try_sub(o).expect("polynomial ring mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.try_mul(o).expect("polynomial ring mismatch")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}
