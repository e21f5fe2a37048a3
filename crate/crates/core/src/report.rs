//! Tabular study output as CSV with `#` metadata lines.
//!
//! ```text
//! # qlink 0.1.0
//! # study: skl
//! # digest: sha256:...
//! # scenario: [link]
//! # scenario: wavelength_nm = 810.0  # default
//! # warning: ...
//! dt_s,pe_label,skl_bits
//! 10,weak,1234
//! ```
//!
//! The `# scenario:` lines are the full resolved scenario, so a report can be
//! replayed with [`crate::scenario::Scenario::from_report`].

use std::fmt;

use crate::error::{Error, Result};
use crate::scenario::Scenario;

pub const SCENARIO_PREFIX: &str = "# scenario: ";
const STUDY_PREFIX: &str = "# study: ";
const DIGEST_PREFIX: &str = "# digest: ";
const WARNING_PREFIX: &str = "# warning: ";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Text(_) => None,
        }
    }

    pub fn as_text(&self) -> String {
        self.to_string()
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Num(v) => f.write_str(&format_number(*v)),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

/// Nine significant digits; plain notation for 1e-4 <= |x| < 1e9.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let r: f64 = format!("{x:.8e}").parse().expect("formatted float parses");
    if (1e-4..1e9).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyReport {
    pub study: String,
    pub digest: String,
    /// Canonical scenario text with `# default` markers.
    pub scenario: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub warnings: Vec<String>,
}

impl StudyReport {
    pub fn new(study: &str, scenario: &Scenario, columns: &[&str]) -> Self {
        Self {
            study: study.to_string(),
            digest: scenario.digest(),
            scenario: scenario.canonical_text(true),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            warnings: scenario.warnings.clone(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric values of a column; text cells become NaN.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64().unwrap_or(f64::NAN)).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# qlink {}\n", env!("CARGO_PKG_VERSION"));
        out.push_str(&format!("{STUDY_PREFIX}{}\n", self.study));
        out.push_str(&format!("{DIGEST_PREFIX}{}\n", self.digest));
        for line in self.scenario.lines().filter(|l| !l.trim().is_empty()) {
            out.push_str(&format!("{SCENARIO_PREFIX}{line}\n"));
        }
        for w in &self.warnings {
            out.push_str(&format!("{WARNING_PREFIX}{w}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Reads a report written by [`StudyReport::to_csv`].
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut report = StudyReport {
            study: String::new(),
            digest: String::new(),
            scenario: String::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            warnings: Vec::new(),
        };
        for (lineno, line) in text.lines().enumerate() {
            if let Some(rest) = line.strip_prefix('#') {
                let full = format!("#{rest}");
                if let Some(v) = full.strip_prefix(STUDY_PREFIX) {
                    report.study = v.trim().to_string();
                } else if let Some(v) = full.strip_prefix(DIGEST_PREFIX) {
                    report.digest = v.trim().to_string();
                } else if let Some(v) = full.strip_prefix(SCENARIO_PREFIX) {
                    report.scenario.push_str(v);
                    report.scenario.push('\n');
                } else if let Some(v) = full.strip_prefix(WARNING_PREFIX) {
                    report.warnings.push(v.to_string());
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if report.columns.is_empty() {
                report.columns = fields.iter().map(|s| s.to_string()).collect();
                continue;
            }
            if fields.len() != report.columns.len() {
                return Err(Error::domain(format!(
                    "line {}: expected {} fields, found {}",
                    lineno + 1,
                    report.columns.len(),
                    fields.len()
                )));
            }
            report.rows.push(
                fields
                    .iter()
                    .map(|f| f.parse::<f64>().map(Cell::Num).unwrap_or_else(|_| Cell::Text(f.to_string())))
                    .collect(),
            );
        }
        if report.columns.is_empty() {
            return Err(Error::EmptyReport("no header row".to_string()));
        }
        Ok(report)
    }
}
