//! Machine-checkable positivity and non-membership evidence.
//!
//! Every verifier recomputes what it checks from the primary data (target
//! polynomial, generators, points). Derived data stored in a certificate,
//! such as product supports, is reported but never trusted.

mod amgm;
mod avoid;
mod badpoint;
pub mod json;
mod obstruction;
mod sample;
mod sos;
mod structural;

pub use amgm::{verify_amgm, AmGmCert, AmGmVerdict};
pub use avoid::{birational_avoid, minimal_polynomial, verify_avoid_map, AvoidMap, AvoidReport, AvoidStep};
pub use badpoint::{
    verify_bad_point, BadPointCert, BadPointReport, CheckLine, ConeReduction, DensityWitness, NonMembership,
};
pub use obstruction::{
    cone_obstruction_for, find_non_sos_obstruction, verify_cone_obstruction, verify_non_sos, ConeObstruction,
    ConeReport, NonSosObstruction, ProductSupport,
};
pub use sample::{sample_nonnegativity, Grid, SampleOutcome};
pub use sos::{verify_sos, Element, SosCert, SosItem, SosRing, SosVerdict};
pub use structural::StructNonneg;

use crate::groebner::GbError;
use crate::poly::PolyError;
use crate::series::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertError {
    #[error("not structurally nonnegative: {0}")]
    Structural(String),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("truncation order {have} is too small, need at least {need}")]
    TruncationTooSmall { have: u32, need: u32 },
    #[error("empty sampling box: {0}")]
    EmptyBox(String),
    #[error("grid has {0} points, above the limit of {limit}", limit = sample::MAX_GRID_POINTS)]
    GridTooLarge(u128),
    #[error("points {0} and {1} define the same closed point")]
    CoincidentPoints(usize, usize),
    #[error("need at least two coordinates, got {0}")]
    DimensionTooSmall(usize),
    #[error("no suitable coordinate change within the search bound")]
    NoCoordinateChange,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Gb(#[from] GbError),
}

#[cfg(test)]
mod tests;
