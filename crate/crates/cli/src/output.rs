//! Deterministic CSV and JSON emission.
//!
//! Floats are always written as `{:.16e}` (17 significant digits), so
//! a value survives a round trip through the file exactly and two runs
//! with the same inputs produce byte-identical artifacts. No
//! timestamps, no map iteration order, no platform-dependent paths
//! inside file contents.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// In-memory table written as CSV with a header row.
#[derive(Debug, Clone)]
pub struct CsvTable {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(name: &str, header: &[&str]) -> Self {
        CsvTable {
            name: name.to_string(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width mismatch in {}", self.name);
        self.rows.push(row);
    }

    pub fn write_to(&self, dir: &Path) -> std::io::Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = dir.join(&self.name);
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(path)
    }
}

/// Cell helpers keeping all float formatting in one place.
pub fn cell_f(x: f64) -> String {
    fmt_float(x)
}

pub fn cell_i(x: usize) -> String {
    x.to_string()
}

pub fn cell_s(x: &str) -> String {
    x.to_string()
}

/// One verified claim in a summary: what was asserted, what was
/// expected, what was measured, and whether it passed.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub claim: String,
    pub expected: String,
    pub measured: f64,
    pub tolerance: String,
    pub pass: bool,
}

impl Check {
    pub fn new(claim: &str, expected: &str, measured: f64, tolerance: &str, pass: bool) -> Self {
        Check {
            claim: claim.to_string(),
            expected: expected.to_string(),
            measured,
            tolerance: tolerance.to_string(),
            pass,
        }
    }

    /// |measured - target| <= tol.
    pub fn within(claim: &str, measured: f64, target: f64, tol: f64) -> Self {
        Check::new(
            claim,
            &fmt_float(target),
            measured,
            &format!("abs {}", fmt_float(tol)),
            (measured - target).abs() <= tol,
        )
    }

    /// measured <= bound.
    pub fn at_most(claim: &str, measured: f64, bound: f64) -> Self {
        Check::new(claim, &format!("<= {}", fmt_float(bound)), measured, "upper bound", measured <= bound)
    }

    /// measured >= bound.
    pub fn at_least(claim: &str, measured: f64, bound: f64) -> Self {
        Check::new(claim, &format!(">= {}", fmt_float(bound)), measured, "lower bound", measured >= bound)
    }
}

/// Experiment summary: claims with pass flags plus the emitted files.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub experiment: String,
    pub model: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub csv_files: Vec<String>,
}

impl Summary {
    pub fn new(experiment: &str, model: &str, seed: u64) -> Self {
        Summary {
            experiment: experiment.to_string(),
            model: model.to_string(),
            seed,
            pass: true,
            checks: Vec::new(),
            csv_files: Vec::new(),
        }
    }

    pub fn add(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    pub fn write_to(&self, dir: &Path) -> std::io::Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}-summary.json", self.experiment));
        fs::write(&path, self.to_json())?;
        Ok(path)
    }
}
