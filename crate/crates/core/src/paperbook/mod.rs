//! Cataloged example objects and the claim suite that replays them.

pub mod catalog;
pub mod claims;
pub mod instances;
pub mod report;

pub use catalog::{Catalog, CatalogError, Object};
pub use claims::{claim, run_claims, Claim, ClaimReport, Filter, Reference, Report, RunError, Status, CLAIMS};
pub use report::{format_json, format_text};
