//! Shared reader for the line-oriented data files: `key: value` header
//! lines (`vars`, `source`, `order`, `trunc`), then one polynomial per line.
//! Blank lines and lines starting with `#` are ignored.

use crate::poly::{parse_poly, ParseError, Poly, Vars};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FileError {
    #[error("line {line}: {message}")]
    Header { line: usize, message: String },
    #[error("missing `vars:` header")]
    MissingVars,
    #[error("line {line}: {source}")]
    Poly { line: usize, source: ParseError },
}

/// Parsed file: header values plus polynomial lines.
#[derive(Debug, Clone)]
pub struct DataFile {
    pub vars: Vars,
    /// Domain variables of a map file; the lines are their images.
    pub source: Option<Vars>,
    pub order: Option<String>,
    pub trunc: Option<u32>,
    pub polys: Vec<Poly>,
}

pub fn read_data_file(text: &str) -> Result<DataFile, FileError> {
    let mut vars: Option<Vars> = None;
    let mut source = None;
    let mut order = None;
    let mut trunc = None;
    let mut polys = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        if let Some((key, value)) = s.split_once(':') {
            let value = value.trim();
            match key.trim() {
                "vars" => {
                    let v = Vars::parse(value);
                    if v.is_empty() {
                        return Err(FileError::Header { line, message: "empty variable list".into() });
                    }
                    vars = Some(v);
                }
                "source" => source = Some(Vars::parse(value)),
                "order" => order = Some(value.to_string()),
                "trunc" => {
                    trunc =
                        Some(value.parse().map_err(|_| FileError::Header {
                            line,
                            message: format!("bad truncation order `{value}`"),
                        })?)
                }
                other => return Err(FileError::Header { line, message: format!("unknown header `{other}`") }),
            }
            continue;
        }
        let v = vars.as_ref().ok_or(FileError::MissingVars)?;
        let p = parse_poly(s, v).map_err(|mut e| {
            e.column += raw.len() - raw.trim_start().len();
            FileError::Poly { line, source: ParseError { line, ..e } }
        })?;
        polys.push(p);
    }
    Ok(DataFile { vars: vars.ok_or(FileError::MissingVars)?, source, order, trunc, polys })
}
