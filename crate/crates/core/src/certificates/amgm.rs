use super::structural::check_ring;
use super::{CertError, StructNonneg};
use crate::poly::Poly;
use crate::rat::int;

/// `target = sum t_i - n * mean` with `mean^n = prod t_i`. All factors are
/// structurally nonnegative, so the arithmetic-geometric mean inequality
/// gives `target >= 0` at every real point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmGmCert {
    pub terms: Vec<StructNonneg>,
    pub mean: StructNonneg,
    pub target: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmGmVerdict {
    Ok,
    Fail(String),
}

impl AmGmVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, AmGmVerdict::Ok)
    }
}

pub fn verify_amgm(c: &AmGmCert) -> Result<AmGmVerdict, CertError> {
    let n = c.terms.len();
    if n < 2 {
        return Err(CertError::Malformed(format!("need at least two terms, got {n}")));
    }
    let vars = c.target.vars().clone();
    check_ring(&vars, &c.target)?;
    let terms: Vec<Poly> = c.terms.iter().map(|t| t.denote(&vars)).collect::<Result<_, _>>()?;
    let mean = c.mean.denote(&vars)?;
    let product = terms.iter().fold(Poly::one(&vars), |acc, t| &acc * t);
    if mean.pow(n as u32) != product {
        return Ok(AmGmVerdict::Fail(format!("mean^{n} differs from the product of the terms")));
    }
    let sum = terms.iter().fold(Poly::zero(&vars), |acc, t| &acc + t);
    let rebuilt = &sum - &mean.scale(&int(n as i64));
    if rebuilt != c.target {
        let diff = &c.target - &rebuilt;
        return Ok(AmGmVerdict::Fail(format!("target - (sum - {n}*mean) = {diff}")));
    }
    Ok(AmGmVerdict::Ok)
}
