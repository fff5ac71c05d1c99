//! Code-parameter tables: `n,k,d` CSV ingestion and the supremacy scan.

use serde::{Deserialize, Serialize};

use crate::bounds::{gap_report, CodeParams, Eq5Mode, GapReport};
use crate::error::Error;
use crate::par::Exec;

/// The bundled fixture: published rows, the five-qubit code and distractors.
pub const TABLE1_FIXTURE: &str = include_str!("../../../fixtures/table1.csv");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub params: CodeParams,
    pub source_line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub entry: TableEntry,
    pub report: GapReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub entries: Vec<ScanRow>,
}

impl ScanResult {
    pub fn flagged(&self) -> impl Iterator<Item = &ScanRow> {
        self.entries.iter().filter(|r| r.report.flagged())
    }
}

/// Parses `n,k,d` lines. An `n,k,d` header is allowed as the first
/// non-comment line; `#` comments and blank lines are skipped.
pub fn parse_table(text: &str) -> Result<Vec<TableEntry>, Error> {
    let mut entries = Vec::new();
    let mut seen_data = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        if !seen_data && fields == ["n", "k", "d"] {
            seen_data = true;
            continue;
        }
        seen_data = true;
        if fields.len() != 3 {
            return Err(Error::MalformedLine {
                line,
                message: format!("expected 3 comma-separated fields, found {}", fields.len()),
            });
        }
        let mut values = [0u64; 3];
        for (slot, (field, name)) in values.iter_mut().zip(fields.iter().zip(["n", "k", "d"])) {
            *slot = field.parse().map_err(|_| Error::MalformedLine {
                line,
                message: format!("{name} is not a non-negative integer: {field:?}"),
            })?;
        }
        let [n, k, d] = values;
        let params = CodeParams::new(n, k, d).map_err(|e| Error::MalformedLine {
            line,
            message: match e {
                Error::Domain(m) => format!("out of range: {m}"),
                other => other.to_string(),
            },
        })?;
        entries.push(TableEntry {
            params,
            source_line: line,
        });
    }
    Ok(entries)
}

pub fn scan(entries: &[TableEntry], q: u64, mode: Eq5Mode) -> Result<ScanResult, Error> {
    scan_with(entries, q, mode, Exec::default())
}

pub fn scan_with(entries: &[TableEntry], q: u64, mode: Eq5Mode, exec: Exec) -> Result<ScanResult, Error> {
    let rows = exec
        .map(entries, |e| {
            gap_report(&e.params, q, mode).map(|report| ScanRow { entry: *e, report })
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ScanResult { entries: rows })
}
