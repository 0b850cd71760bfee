//! Report files: fixed-column CSV and a JSON mirror of the same rows.
//!
//! CSV carries only the header and the rows, so a whole CSV file is
//! byte-stable for a fixed config and seed. JSON adds a metadata object;
//! the timestamp lives there and nowhere else, keeping the row section
//! byte-stable too.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use biased_collapse_core::scenario::ReportRow;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Metadata {
    pub command: String,
    pub seed: u64,
    pub timestamp_unix_s: u64,
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub label: String,
    pub analytic: f64,
    pub empirical: f64,
    pub stderr: f64,
    pub n: u64,
}

impl From<&ReportRow> for Row {
    fn from(r: &ReportRow) -> Self {
        Row {
            label: r.label.clone(),
            analytic: r.analytic,
            empirical: r.empirical,
            stderr: r.stderr,
            n: r.n,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportFile {
    pub metadata: Metadata,
    pub rows: Vec<Row>,
}

impl ReportFile {
    pub fn new(command: &str, seed: u64, tolerances: BTreeMap<String, f64>, rows: Vec<Row>) -> Self {
        let timestamp_unix_s = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        ReportFile {
            metadata: Metadata {
                command: command.to_string(),
                seed,
                timestamp_unix_s,
                tolerances,
            },
            rows,
        }
    }

    /// Fixed columns `label,analytic,empirical,stderr,n`, UTF-8, header
    /// row, `.` decimal separator, no metadata and no timestamp.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,analytic,empirical,stderr,n\n");
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{}",
                row.label, row.analytic, row.empirical, row.stderr, row.n
            )
            .expect("writing to a String cannot fail");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The deterministic portion: everything except the timestamp.
    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("rows serialize")
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Csv => self.to_csv(),
            ReportFormat::Json => self.to_json(),
        }
    }

    pub fn write(&self, format: ReportFormat, path: &Path) -> std::io::Result<()> {
        fs::write(path, self.render(format))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportFile {
        ReportFile::new(
            "run",
            42,
            BTreeMap::new(),
            vec![Row {
                label: "experience_yes".into(),
                analytic: 2.0 / 3.0,
                empirical: 0.6671,
                stderr: 0.0047,
                n: 10_000,
            }],
        )
    }

    #[test]
    fn csv_has_fixed_header_and_no_timestamp() {
        let csv = sample().to_csv();
        assert!(csv.starts_with("label,analytic,empirical,stderr,n\n"));
        assert!(csv.contains("experience_yes,0.6666666666666666,0.6671,0.0047,10000"));
        assert!(!csv.contains("timestamp"));
    }

    #[test]
    fn json_isolates_timestamp_in_metadata() {
        let report = sample();
        let json = report.to_json();
        assert!(json.contains("\"timestamp_unix_s\""));
        assert!(!report.body_json().contains("timestamp"));
    }
}
