//! Tabular output as CSV or JSON, and the parameter fingerprint.

use crate::args::FormatArg;
use crate::error::{CliError, CliResult};
use serde_json::{Map, Number, Value};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::Path;

/// Header of every tail-probability table.
pub const TAIL_HEADER: [&str; 4] = ["x", "p", "method", "params_hash"];

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Self { header: header.iter().map(|h| h.as_ref().to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Array of objects; numeric cells become JSON numbers, empty cells null.
    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.clone(), cell_value(v)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&Value::Array(rows)).expect("serializable table");
        text.push('\n');
        text
    }

    pub fn render(&self, format: FormatArg) -> String {
        match format {
            FormatArg::Csv => self.to_csv(),
            FormatArg::Json => self.to_json(),
        }
    }
}

fn cell_value(cell: &str) -> Value {
    if cell.is_empty() {
        return Value::Null;
    }
    match cell.parse::<f64>().ok().and_then(Number::from_f64) {
        Some(n) => Value::Number(n),
        None => Value::String(cell.to_string()),
    }
}

/// Writes to `out`, or to stdout when no path is given.
pub fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(format!("cannot write to stdout: {e}")))
        }
    }
}

/// First 16 hex digits of the SHA-256 of the canonical `key=value;` string.
pub fn params_hash(fields: &[(&str, String)]) -> String {
    let mut canonical = String::new();
    for (k, v) in fields {
        canonical.push_str(k);
        canonical.push('=');
        canonical.push_str(v);
        canonical.push(';');
    }
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Shortest decimal that parses back to the same double.
pub fn exact(v: f64) -> String {
    format!("{v}")
}
