//! CSV and JSON artifacts. Both carry the tool version, the schema version
//! and the resolved config; nothing time-dependent is written.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::config::{RunConfig, CONFIG_HEADER};
use crate::error::LabError;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl Cell {
    fn render(&self, out: &mut String) {
        match *self {
            Cell::Int(i) => write!(out, "{i}"),
            Cell::Float(x) => write!(out, "{}", format_float(x)),
            Cell::Bool(b) => write!(out, "{b}"),
        }
        .expect("write to string");
    }
}

/// Shortest representation that parses back to the same `f64`; scientific
/// notation outside `[1e-4, 1e15)`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self, config: &Value) -> String {
        let mut out = String::new();
        writeln!(out, "# cpb-lab {TOOL_VERSION}").unwrap();
        writeln!(out, "# schema_version: {SCHEMA_VERSION}").unwrap();
        writeln!(out, "{CONFIG_HEADER}{config}").unwrap();
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.render(&mut out);
            }
            out.push('\n');
        }
        out
    }
}

/// Result of one command: a table, a summary, or both.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub table: Option<Table>,
    pub summary: Option<Value>,
}

pub fn summary_json(cfg: &RunConfig, results: &Value) -> String {
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "command": cfg.command(),
        "config": cfg.echo(),
        "results": results,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("json serialises");
    text.push('\n');
    text
}

/// Write `<stem>.csv` and/or `<stem>.json` under `dir`.
pub fn write_report(cfg: &RunConfig, report: &Report, dir: &Path, stem: &str) -> Result<Vec<PathBuf>, LabError> {
    fs::create_dir_all(dir).map_err(|source| LabError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    let mut put = |ext: &str, text: String| -> Result<(), LabError> {
        let path = dir.join(format!("{stem}.{ext}"));
        fs::write(&path, text).map_err(|source| LabError::Io {
            path: path.clone(),
            source,
        })?;
        written.push(path);
        Ok(())
    };
    if let Some(table) = &report.table {
        put("csv", table.to_csv(&cfg.echo()))?;
    }
    if let Some(summary) = &report.summary {
        put("json", summary_json(cfg, summary))?;
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, -2.5e-9, 1e300, 123456.789, 0.0, 1e-4, 9.99e14, 1e15] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(format_float(1e-20), "1e-20");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["level", "energy", "flag"]);
        t.push(vec![0usize.into(), 1.5.into(), true.into()]);
        let csv = t.to_csv(&json!({"command": "spectrum"}));
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# cpb-lab "));
        assert_eq!(lines[1], "# schema_version: 1");
        assert_eq!(lines[2], r#"# config: {"command":"spectrum"}"#);
        assert_eq!(lines[3], "level,energy,flag");
        assert_eq!(lines[4], "0,1.5,true");
    }
}
