use super::{Ideal, MonOrder};
use crate::textio::{read_data_file, FileError};

/// Contents of an ideal file.
#[derive(Debug, Clone)]
pub struct IdealFile {
    pub ideal: Ideal,
    pub order: Option<MonOrder>,
}

pub fn parse_ideal_file(text: &str) -> Result<IdealFile, FileError> {
    let f = read_data_file(text)?;
    let order = match &f.order {
        Some(o) => Some(o.parse::<MonOrder>().map_err(|e| FileError::Header { line: 0, message: e.to_string() })?),
        None => None,
    };
    let ideal = Ideal::new(&f.vars, f.polys).expect("all generators parsed in one ring");
    Ok(IdealFile { ideal, order })
}

pub fn format_ideal_file(ideal: &Ideal, order: Option<MonOrder>) -> String {
    let mut s = format!("vars: {}\n", ideal.vars().names().join(" "));
    if let Some(o) = order {
        s.push_str(&format!("order: {o}\n"));
    }
    for g in ideal.gens() {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}
