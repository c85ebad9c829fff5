use std::fmt::Write as _;

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::Format;

/// A finished query result: the echoed query, the payload, warnings, and a
/// pre-rendered human table.
#[derive(Debug, Clone)]
pub struct Document {
    pub query: Map<String, Value>,
    pub result: Value,
    pub warnings: Vec<String>,
    pub table: String,
}

impl Document {
    pub fn new(query: Map<String, Value>) -> Self {
        Document { query, result: Value::Null, warnings: Vec::new(), table: String::new() }
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    /// Machine mode is one compact JSON line with sorted keys.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = json!({
                    "query": Value::Object(self.query.clone()),
                    "result": self.result,
                    "warnings": self.warnings,
                });
                let mut s = serde_json::to_string(&doc).expect("documents serialize");
                s.push('\n');
                s
            }
            Format::Table => {
                let mut s = self.table.clone();
                for w in &self.warnings {
                    let _ = writeln!(s, "note: {w}");
                }
                s
            }
        }
    }
}

/// Integers that fit in `u64` become JSON numbers; larger ones become
/// decimal strings so no consumer ever sees a float.
pub fn count_value(n: &BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

/// Left-aligned text table with a header row.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}
