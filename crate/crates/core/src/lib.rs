//! Exact computer algebra for positivity questions about real polynomials.

pub mod certificates;
pub mod groebner;
pub mod paperbook;
pub mod poly;
pub mod rat;
pub mod series;
pub mod textio;

pub use groebner::{GbError, GbOptions, Ideal, MembershipWitness, MonOrder};
pub use poly::{parse_poly, ArithKind, ExponentSet, Monomial, Poly, PolyError, Vars};
pub use rat::{GaussRat, Rat};
pub use series::{SeriesError, TruncSeries};
