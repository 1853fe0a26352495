use super::structural::check_ring;
use super::{CertError, StructNonneg};
use crate::poly::{Poly, Vars};
use crate::series::TruncSeries;

/// Ring in which a sum-of-squares identity is asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SosRing {
    Polynomial,
    /// Power series, compared through total degree `N`.
    Truncated(u32),
}

/// A polynomial, or a series known through some degree.
#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Poly(Poly),
    Series(TruncSeries),
}

impl Element {
    pub fn vars(&self) -> &Vars {
        match self {
            Element::Poly(p) => p.vars(),
            Element::Series(s) => s.vars(),
        }
    }

    fn to_series(&self, n: u32) -> Result<TruncSeries, CertError> {
        match self {
            Element::Poly(p) => Ok(TruncSeries::new(p, n)),
            Element::Series(s) if s.trunc() >= n => Ok(s.with_trunc(n)),
            Element::Series(s) => Err(CertError::TruncationTooSmall { have: s.trunc(), need: n }),
        }
    }
}

impl From<Poly> for Element {
    fn from(p: Poly) -> Self {
        Element::Poly(p)
    }
}

impl From<TruncSeries> for Element {
    fn from(s: TruncSeries) -> Self {
        Element::Series(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SosItem {
    pub scale: StructNonneg,
    pub root: Element,
}

impl SosItem {
    pub fn new(scale: StructNonneg, root: impl Into<Element>) -> Self {
        Self { scale, root: root.into() }
    }
}

/// `target = sum scale_i * root_i^2` in `ring`.
#[derive(Clone, Debug, PartialEq)]
pub struct SosCert {
    pub ring: SosRing,
    pub target: Element,
    pub items: Vec<SosItem>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SosVerdict {
    Ok,
    /// `target - sum`, truncated at `N` in the series case.
    Fail {
        residual: Poly,
    },
}

impl SosVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, SosVerdict::Ok)
    }
}

pub fn verify_sos(c: &SosCert) -> Result<SosVerdict, CertError> {
    let vars = c.target.vars().clone();
    for item in &c.items {
        if item.root.vars() != &vars {
            return Err(CertError::RingMismatch(format!(
                "root in {:?}, target in {:?}",
                item.root.vars().names(),
                vars.names()
            )));
        }
    }
    let residual = match c.ring {
        SosRing::Polynomial => {
            let Element::Poly(target) = &c.target else {
                return Err(CertError::RingMismatch("series target in the polynomial ring".into()));
            };
            let mut acc = target.clone();
            for item in &c.items {
                let Element::Poly(root) = &item.root else {
                    return Err(CertError::RingMismatch("series root in the polynomial ring".into()));
                };
                check_ring(&vars, root)?;
                let term = &item.scale.denote(&vars)? * &(root * root);
                acc = &acc - &term;
            }
            acc
        }
        SosRing::Truncated(n) => {
            let mut acc = c.target.to_series(n)?;
            for item in &c.items {
                let root = item.root.to_series(n)?;
                let scale = TruncSeries::new(&item.scale.denote(&vars)?, n);
                acc = &acc - &(&scale * &(&root * &root));
            }
            acc.body().clone()
        }
    };
    Ok(if residual.is_zero() { SosVerdict::Ok } else { SosVerdict::Fail { residual } })
}
