//! Power series over `Q` truncated at a total degree `N`.

mod adic;
mod hat;
mod io;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use adic::{adic_decompose, adic_decompose_weighted, complete_squares, AdicResult, SquareCompletion};
pub use hat::{hat_alpha, HatCoordinates, HAT_VARS};
pub use io::{format_series_file, parse_series_file};

use crate::poly::{Monomial, Poly, PolyError, Vars};
use crate::rat::{int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VarMismatch(Vec<String>, Vec<String>),
    #[error("constant term is {0}, expected 1")]
    NotUnit(String),
    #[error("root index must be at least 1")]
    ZeroRootIndex,
    #[error("reversion needs a one-variable series with zero constant term and nonzero linear term")]
    NotReversible,
    #[error("input has a term of degree {found}, below the required order {required}")]
    OrderTooLow { found: u32, required: u32 },
    #[error("lowest-degree part has order {0}, expected 2")]
    NotOrderTwo(String),
    #[error("number of square variables {r} exceeds arity {arity}")]
    RankOutOfRange { r: usize, arity: usize },
    #[error("truncation order {have} is too small, need at least {need}")]
    TruncationTooSmall { have: u32, need: u32 },
    #[error("substituted series must have zero constant term")]
    ConstantImage,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Valuation of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOrder {
    Exact(u32),
    /// The body is zero; the true order is at least this.
    AtLeast(u32),
}

/// A power series known through total degree `trunc`.
#[derive(Clone)]
pub struct TruncSeries {
    body: Poly,
    trunc: u32,
}

impl TruncSeries {
    /// Truncates `p` at `trunc`.
    pub fn new(p: &Poly, trunc: u32) -> Self {
        Self { body: p.truncate(trunc), trunc }
    }

    pub fn zero(vars: &Vars, trunc: u32) -> Self {
        Self { body: Poly::zero(vars), trunc }
    }

    pub fn one(vars: &Vars, trunc: u32) -> Self {
        Self { body: Poly::one(vars), trunc }
    }

    pub fn var_at(vars: &Vars, index: usize, trunc: u32) -> Self {
        Self::new(&Poly::var_at(vars, index), trunc)
    }

    pub fn vars(&self) -> &Vars {
        self.body.vars()
    }

    pub fn arity(&self) -> usize {
        self.body.arity()
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.body.coeff(m)
    }

    pub fn constant_term(&self) -> Rat {
        self.body.constant_term()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn order(&self) -> SeriesOrder {
        match self.body.order() {
            Some(d) => SeriesOrder::Exact(d),
            None => SeriesOrder::AtLeast(self.trunc + 1),
        }
    }

    /// Lowest total degree that can be nonzero: the exact order, or `trunc + 1`.
    pub fn valuation(&self) -> u32 {
        match self.order() {
            SeriesOrder::Exact(d) | SeriesOrder::AtLeast(d) => d,
        }
    }

    /// Lowers the truncation order (never raises it).
    pub fn with_trunc(&self, trunc: u32) -> Self {
        let t = trunc.min(self.trunc);
        Self { body: self.body.truncate(t), trunc: t }
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.vars() != other.vars() {
            return Err(SeriesError::VarMismatch(self.vars().names().to_vec(), other.vars().names().to_vec()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let t = self.trunc.min(other.trunc);
        Ok(Self { body: self.body.truncate(t).try_add(&other.body.truncate(t))?, trunc: t })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let t = self.trunc.min(other.trunc);
        Ok(Self { body: self.body.truncate(t).try_sub(&other.body.truncate(t))?, trunc: t })
    }

    /// Truncated product at the smaller input truncation order.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let t = self.trunc.min(other.trunc);
        Ok(Self { body: self.body.mul_bounded(&other.body, Some(t)), trunc: t })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self { body: self.body.scale(c), trunc: self.trunc }
    }

    pub fn mul_poly(&self, p: &Poly) -> Result<Self, SeriesError> {
        self.try_mul(&Self::new(p, self.trunc))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.vars(), self.trunc);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division by a monomial dividing every term. The truncation
    /// order drops by the monomial's degree.
    pub fn div_monomial(&self, m: &Monomial) -> Result<Self, SeriesError> {
        let d = m.degree();
        if d > self.trunc {
            return Err(SeriesError::TruncationTooSmall { have: self.trunc, need: d });
        }
        let mut terms = Vec::with_capacity(self.body.len());
        for (t, c) in self.body.terms() {
            terms.push((t.div(m).ok_or(PolyError::NotDivisible)?, c.clone()));
        }
        Ok(Self { body: Poly::from_terms(self.vars(), terms), trunc: self.trunc - d })
    }

    /// Multiplication by a monomial; the truncation order rises by its degree.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self { body: self.body.mul_monomial(m, &int(1)), trunc: self.trunc + m.degree() }
    }

    /// True if `self - other` has no term of degree `<= n`.
    pub fn agrees_through(&self, other: &Self, n: u32) -> bool {
        self.vars() == other.vars() && self.body.truncate(n) == other.body.truncate(n)
    }

    /// Substitutes series with zero constant term for the variables
    /// (`images[i]` for variable `i`).
    pub fn compose(&self, images: &[TruncSeries]) -> Result<Self, SeriesError> {
        if images.iter().any(|s| !s.constant_term().is_zero()) {
            return Err(SeriesError::ConstantImage);
        }
        let out = Self::compose_poly(&self.body, images)?;
        // the unknown tail of `self` pulls back to order >= (N + 1) * v
        let v = images.iter().map(|s| s.valuation()).min().unwrap_or(1);
        let known = (self.trunc + 1).saturating_mul(v) - 1;
        Ok(out.with_trunc(known))
    }

    /// Substitutes series for the variables of an exact polynomial.
    pub fn compose_poly(p: &Poly, images: &[TruncSeries]) -> Result<Self, SeriesError> {
        let Some(first) = images.first() else {
            return Err(PolyError::MissingImage(p.vars().names().first().cloned().unwrap_or_default()).into());
        };
        let mut t = first.trunc;
        for im in images {
            first.check(im)?;
            t = t.min(im.trunc);
        }
        let polys: Vec<Poly> = images.iter().map(|s| s.body.clone()).collect();
        Ok(Self { body: p.compose_bounded(&polys, Some(t))?, trunc: t })
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(SeriesError::NotUnit("0".into()));
        }
        // u_{k+1} = u_k (2 - s u_k), doubling correct degrees
        let mut u = Self::new(&Poly::constant(self.vars(), c0.recip()), self.trunc);
        let two = Self::new(&Poly::constant(self.vars(), int(2)), self.trunc);
        let mut good = 0u32;
        while good < self.trunc {
            u = &u * &(&two - &(self * &u));
            good = 2 * good + 1;
        }
        Ok(u)
    }

    /// The `n`-th root with constant term 1 of a series with constant term 1,
    /// by the binomial series `sum binom(1/n, k) e^k` where `s = 1 + e`.
    pub fn nth_root_unit(&self, n: u32) -> Result<Self, SeriesError> {
        if n == 0 {
            return Err(SeriesError::ZeroRootIndex);
        }
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(SeriesError::NotUnit(crate::rat::fmt_rat(&c0)));
        }
        let one = Self::one(self.vars(), self.trunc);
        let e = self - &one;
        let exponent = Rat::new(1.into(), n.into());
        let mut coeff = Rat::one();
        let mut power = one.clone();
        let mut acc = one;
        for k in 0..self.trunc {
            coeff = coeff * (&exponent - Rat::from_integer(k.into())) / Rat::from_integer((k + 1).into());
            power = &power * &e;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power.scale(&coeff);
        }
        Ok(acc)
    }

    /// Compositional inverse of a one-variable series `s = c t + ...`, `c != 0`,
    /// by Newton iteration `t <- t - (s(t) - y) / s'(t)`, doubling precision.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        if self.arity() != 1 || !self.constant_term().is_zero() {
            return Err(SeriesError::NotReversible);
        }
        let c1 = self.body.coeff_exps(&[1]);
        if c1.is_zero() {
            return Err(SeriesError::NotReversible);
        }
        let vars = self.vars().clone();
        let n = self.trunc;
        let y = Poly::var_at(&vars, 0);
        let deriv = self.body.derivative_at(0);
        let mut t = y.scale(&c1.recip());
        let mut prec = 1u32;
        while prec < n {
            prec = (2 * prec).min(n);
            let s_t = self.body.compose_bounded(std::slice::from_ref(&t), Some(prec))?;
            let ds_t = deriv.compose_bounded(std::slice::from_ref(&t), Some(prec))?;
            let inv = Self::new(&ds_t, prec).inverse()?;
            let step = Self::new(&(&s_t - &y), prec).try_mul(&inv)?;
            t = (&t - &step.body).truncate(prec);
        }
        Ok(Self::new(&t, n))
    }

    /// Re-expresses the series in a ring containing all of our variables.
    pub fn embed(&self, target: &Vars) -> Result<Self, SeriesError> {
        Ok(Self { body: self.body.embed(target)?, trunc: self.trunc })
    }
}

impl PartialEq for TruncSeries {
    /// Equality of bodies at the common (smaller) truncation order.
    fn eq(&self, other: &Self) -> bool {
        self.agrees_through(other, self.trunc.min(other.trunc))
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self.body, self.trunc + 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[{}; N={}]({})", self.vars().names().join(","), self.trunc, self.body)
    }
}

macro_rules! series_op {
    ($tr:ident, $m:ident, $call:ident) => {
        impl<'a> $tr<&'a TruncSeries> for &'a TruncSeries {
            type Output = TruncSeries;
            fn $m(self, o: &TruncSeries) -> TruncSeries {
                self.$call(o).expect("series ring mismatch")
            }
        }
    };
}
series_op!(Add, add, try_add);
series_op!(Sub, sub, try_sub);
series_op!(Mul, mul, try_mul);

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries { body: -&self.body, trunc: self.trunc }
    }
}

#[cfg(test)]
mod tests;
