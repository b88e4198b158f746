//! Numerical checks of the operator inequalities, gallery demonstrations,
//! seeded fuzzing, and the `rlfrac` command line.

pub mod checks;
pub mod cli;
pub mod fuzz;
pub mod gallery;
pub mod suite;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use checks::*;
pub use cli::run_cli;
pub use fuzz::{FuzzCase, FuzzFamily, FuzzSpec};
pub use gallery::{gallery_demos, witness_sweep};
pub use suite::{closed_form_integral_error, run_suite, semigroup_order, Suite, VerifyConfig};

/// One inequality `lhs ≤ rhs·(1 + slack)`, evaluated once.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub params: BTreeMap<String, Value>,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub margin: f64,
    pub pass: bool,
    pub runtime_ms: u64,
}

impl CheckResult {
    pub fn new(check_id: &str, lhs: f64, rhs: f64, slack: f64) -> Self {
        let mut params = BTreeMap::new();
        params.insert("slack".to_string(), Value::from(slack));
        Self {
            check_id: check_id.to_string(),
            params,
            lhs,
            rhs,
            margin: rhs - lhs,
            pass: lhs <= rhs * (1.0 + slack),
            runtime_ms: 0,
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.runtime_ms = start.elapsed().as_millis() as u64;
        self
    }

    /// The slack recorded in `params`.
    pub fn slack(&self) -> f64 {
        self.params.get("slack").and_then(Value::as_f64).unwrap_or(0.0)
    }

    /// Recompute the pass flag from the recorded numbers.
    pub fn recomputed_pass(&self) -> bool {
        self.lhs <= self.rhs * (1.0 + self.slack())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

/// A named table of numbers, emitted as CSV by the gallery and sweeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Series {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> crate::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| format!("{v:?}")))?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: BTreeMap<String, Value>,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    /// Toolkit operations exercised while producing the report.
    pub coverage: BTreeSet<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<Series>,
}

impl Report {
    pub fn new(config: BTreeMap<String, Value>) -> Self {
        Self {
            version: crate::VERSION.to_string(),
            config,
            checks: Vec::new(),
            summary: Summary::default(),
            coverage: BTreeSet::new(),
            series: Vec::new(),
        }
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckResult>) {
        for c in checks {
            if c.pass {
                self.summary.pass += 1;
            } else {
                self.summary.fail += 1;
            }
            self.checks.push(c);
        }
    }

    pub fn cover(&mut self, ops: &[&str]) {
        self.coverage.extend(ops.iter().map(|s| s.to_string()));
    }

    pub fn merge(&mut self, other: Report) {
        self.extend(other.checks);
        self.coverage.extend(other.coverage);
        self.series.extend(other.series);
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// JSON with every `runtime_ms` field removed, for reproducibility checks.
    pub fn to_json_without_timing(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serialises");
        strip_key(&mut v, "runtime_ms");
        serde_json::to_string_pretty(&v).expect("value serialises")
    }
}

/// Remove `key` from every object inside `v`.
pub fn strip_key(v: &mut Value, key: &str) {
    match v {
        Value::Object(map) => {
            map.remove(key);
            map.values_mut().for_each(|x| strip_key(x, key));
        }
        Value::Array(items) => items.iter_mut().for_each(|x| strip_key(x, key)),
        _ => {}
    }
}
