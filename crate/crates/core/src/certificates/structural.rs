use num_traits::{Signed, Zero};

use super::CertError;
use crate::poly::{Poly, Vars};
use crate::rat::{int, Rat};

/// `scalar * prod f_i^2 * prod (g_j^2 + c_j)` with `scalar >= 0` and every
/// `c_j > 0`, hence nonnegative at every real point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructNonneg {
    pub scalar: Rat,
    pub squares: Vec<Poly>,
    pub atoms: Vec<(Poly, Rat)>,
}

impl StructNonneg {
    pub fn scalar(c: Rat) -> Self {
        Self { scalar: c, squares: Vec::new(), atoms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::scalar(int(1))
    }

    pub fn square(f: Poly) -> Self {
        Self { scalar: int(1), squares: vec![f], atoms: Vec::new() }
    }

    pub fn times_square(mut self, f: Poly) -> Self {
        self.squares.push(f);
        self
    }

    pub fn times_atom(mut self, g: Poly, c: Rat) -> Self {
        self.atoms.push((g, c));
        self
    }

    pub fn validate(&self) -> Result<(), CertError> {
        if self.scalar.is_negative() {
            return Err(CertError::Structural(format!("negative scalar {}", self.scalar)));
        }
        for (g, c) in &self.atoms {
            if !c.is_positive() {
                return Err(CertError::Structural(format!("atom ({})^2 + {} has nonpositive constant", g, c)));
            }
        }
        Ok(())
    }

    /// The denoted polynomial in `vars`. Factors must live in `vars`.
    pub fn denote(&self, vars: &Vars) -> Result<Poly, CertError> {
        self.validate()?;
        let mut acc = Poly::constant(vars, self.scalar.clone());
        for f in &self.squares {
            check_ring(vars, f)?;
            acc = &acc * &(f * f);
        }
        for (g, c) in &self.atoms {
            check_ring(vars, g)?;
            let atom = &(g * g) + &Poly::constant(vars, c.clone());
            acc = &acc * &atom;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() || self.squares.iter().any(Poly::is_zero)
    }
}

pub(crate) fn check_ring(vars: &Vars, p: &Poly) -> Result<(), CertError> {
    if p.vars() != vars {
        return Err(CertError::RingMismatch(format!("{:?} vs {:?}", p.vars().names(), vars.names())));
    }
    Ok(())
}
