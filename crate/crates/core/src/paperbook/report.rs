//! Plain-text and JSON renderings of a claim report. Neither contains
//! timings or anything else that varies between runs.

use serde::Serialize;

use super::claims::{Report, Status};
use super::instances::HAT_TRUNC;

fn status_word(s: &Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Error { budget_exceeded: true } => "BUDGET",
        Status::Error { .. } => "ERROR",
    }
}

pub fn format_text(r: &Report) -> String {
    let mut out = format!(
        "claims: {} run, {} passed, {} failed\ntruncation order: {}\n",
        r.claims.len(),
        r.passed(),
        r.claims.len() - r.passed(),
        HAT_TRUNC
    );
    for c in &r.claims {
        out.push_str(&format!("\n{:<6} {}  [{}]\n       {}\n", status_word(&c.status), c.id, c.reference, c.statement));
        for d in &c.details {
            out.push_str(&format!("       {d}\n"));
        }
    }
    out
}

#[derive(Serialize)]
struct ClaimDoc<'a> {
    id: &'a str,
    status: &'a str,
    reference: String,
    statement: &'a str,
    details: &'a [String],
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    total: usize,
    passed: usize,
    failed: usize,
    truncation: u32,
    claims: Vec<ClaimDoc<'a>>,
}

pub fn format_json(r: &Report) -> String {
    let doc = ReportDoc {
        total: r.claims.len(),
        passed: r.passed(),
        failed: r.claims.len() - r.passed(),
        truncation: HAT_TRUNC,
        claims: r
            .claims
            .iter()
            .map(|c| ClaimDoc {
                id: c.id,
                status: status_word(&c.status),
                reference: c.reference.to_string(),
                statement: c.statement,
                details: &c.details,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}
