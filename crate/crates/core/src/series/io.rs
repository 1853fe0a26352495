use super::TruncSeries;
use crate::textio::{read_data_file, FileError};

/// Reads `vars:` and `trunc:` headers followed by one body polynomial.
pub fn parse_series_file(text: &str) -> Result<TruncSeries, FileError> {
    let f = read_data_file(text)?;
    let trunc = f.trunc.ok_or(FileError::Header { line: 0, message: "missing `trunc:` header".into() })?;
    match f.polys.as_slice() {
        [p] => Ok(TruncSeries::new(p, trunc)),
        other => Err(FileError::Header { line: 0, message: format!("expected one body line, found {}", other.len()) }),
    }
}

pub fn format_series_file(s: &TruncSeries) -> String {
    format!("vars: {}\ntrunc: {}\n{}\n", s.vars().names().join(" "), s.trunc(), s.body())
}
