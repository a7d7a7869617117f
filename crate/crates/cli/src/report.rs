//! Reports: named checks with tolerances, plus CSV tables.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `value ≤ tolerance`.
    AtMost,
    /// `value ≥ tolerance`.
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub pass: bool,
    /// Whether a failure makes the experiment fail.
    pub gating: bool,
}

impl Check {
    pub fn at_most(name: &str, value: f64, tolerance: f64) -> Check {
        Check { name: name.into(), value, tolerance, relation: Relation::AtMost, pass: value <= tolerance, gating: true }
    }

    pub fn at_least(name: &str, value: f64, tolerance: f64) -> Check {
        Check { name: name.into(), value, tolerance, relation: Relation::AtLeast, pass: value >= tolerance, gating: true }
    }

    /// A yes/no outcome, recorded as 1 or 0 against a tolerance of 1.
    pub fn holds(name: &str, ok: bool) -> Check {
        Check::at_least(name, if ok { 1.0 } else { 0.0 }, 1.0)
    }

    pub fn non_gating(mut self) -> Check {
        self.gating = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Table {
        Table { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        self.push_cells(row.iter().map(|v| format!("{v:e}")).collect());
    }

    pub fn push_cells(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Column `k` parsed back to numbers.
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[k].parse().unwrap_or(f64::NAN)).collect()
    }

    pub fn write_csv(&self, dir: &Path) -> anyhow::Result<()> {
        let mut w = csv::Writer::from_path(dir.join(format!("{}.csv", self.name)))?;
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// What an experiment produces.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

impl Outcome {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub experiment: String,
    pub seed: u64,
    pub strict: bool,
    pub config: serde_json::Value,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl ExperimentReport {
    pub fn new(experiment: &str, seed: u64, strict: bool, config: serde_json::Value, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass || !(c.gating || strict));
        ExperimentReport { schema_version: SCHEMA_VERSION, experiment: experiment.into(), seed, strict, config, checks, pass }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, dir: &Path) -> anyhow::Result<()> {
        std::fs::File::create(dir.join("report.json"))?.write_all(self.to_json().as_bytes())?;
        Ok(())
    }
}
