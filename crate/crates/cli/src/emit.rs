//! CSV and JSON emission of tables and reports.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::args::Format;
use crate::CliError;

/// Numeric table with named columns and optional `#` comment lines before the header.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            comments: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn check_finite(&self) -> Result<(), CliError> {
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in self.columns.iter().zip(row) {
                if !v.is_finite() {
                    return Err(CliError::Numeric(format!(
                        "non-finite value {v} in column {c} at row {} (first column {})",
                        i + 1,
                        row[0]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Header line then rows, each value with 17 significant digits.
    pub fn to_csv(&self) -> Result<String, CliError> {
        self.check_finite()?;
        let mut s = String::new();
        for c in &self.comments {
            s.push_str("# ");
            s.push_str(c);
            s.push('\n');
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        Ok(s)
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        self.check_finite()?;
        Ok(serde_json::to_string_pretty(self).expect("tables serialise") + "\n")
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Inverse of [`Table::to_csv`].
    pub fn parse_csv(text: &str) -> Result<Self, CliError> {
        let mut comments = Vec::new();
        let mut lines = text.lines();
        let header = loop {
            match lines.next() {
                Some(l) if l.starts_with('#') => comments.push(l.trim_start_matches('#').trim().to_string()),
                Some(l) => break l,
                None => return Err(CliError::Numeric("CSV has no header".into())),
            }
        };
        let columns: Vec<String> = header.split(',').map(str::to_string).collect();
        let mut rows = Vec::new();
        for l in lines.filter(|l| !l.is_empty()) {
            let row = l
                .split(',')
                .map(|c| c.parse::<f64>().map_err(|e| CliError::Numeric(format!("{c:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != columns.len() {
                return Err(CliError::Numeric(format!("row has {} cells, header {}", row.len(), columns.len())));
            }
            rows.push(row);
        }
        Ok(Self { comments, columns, rows })
    }
}

/// One comparison within a verification suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub observed: f64,
    pub tolerance: f64,
    /// `absolute` or `relative`.
    pub metric: &'static str,
    pub passed: bool,
}

impl Check {
    pub fn absolute(name: impl Into<String>, expected: f64, observed: f64, tolerance: f64) -> Self {
        let passed = (observed - expected).abs() <= tolerance;
        Self {
            name: name.into(),
            expected,
            observed,
            tolerance,
            metric: "absolute",
            passed,
        }
    }

    pub fn relative(name: impl Into<String>, expected: f64, observed: f64, tolerance: f64) -> Self {
        let passed = ((observed - expected) / expected).abs() <= tolerance;
        Self {
            name: name.into(),
            expected,
            observed,
            tolerance,
            metric: "relative",
            passed,
        }
    }

    /// Passes when `observed ≤ bound`.
    pub fn at_most(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            expected: 0.0,
            observed,
            tolerance: bound,
            metric: "upper-bound",
            passed: observed <= bound,
        }
    }

    /// A check whose evaluation itself failed.
    pub fn errored(name: impl Into<String>, error: &str) -> Self {
        log::error!("{error}");
        Self {
            name: format!("{} (error: {error})", name.into()),
            expected: f64::NAN,
            observed: f64::NAN,
            tolerance: 0.0,
            metric: "error",
            passed: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub wall_clock_seconds: f64,
}

impl RunReport {
    pub fn new(command: String, checks: Vec<Check>, wall_clock_seconds: f64) -> Self {
        Self {
            command,
            passed: checks.iter().all(|c| c.passed),
            checks,
            wall_clock_seconds,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            // serde_json writes non-finite floats as null
            Format::Json => serde_json::to_string_pretty(self).expect("reports serialise") + "\n",
            Format::Csv => {
                let mut s = format!("# {}\n# passed={} wall_clock_seconds={}\n", self.command, self.passed, self.wall_clock_seconds);
                s.push_str("name,expected,observed,tolerance,metric,passed\n");
                for c in &self.checks {
                    s.push_str(&format!(
                        "\"{}\",{:.16e},{:.16e},{:.16e},{},{}\n",
                        c.name.replace('"', "'"),
                        c.expected,
                        c.observed,
                        c.tolerance,
                        c.metric,
                        c.passed
                    ));
                }
                s
            }
        }
    }
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}
