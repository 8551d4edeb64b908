//! Machine-readable check reports (`report.v1`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "report.v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// The check could not be decided inside the exactness range of a truncation.
    Inconclusive,
}

/// One named check with its residuals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Entry {
    pub check: String,
    pub pass: bool,
    pub outcome: Outcome,
    pub residuals: BTreeMap<String, f64>,
    pub eigenvalues: Vec<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
}

impl Entry {
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            pass: true,
            outcome: Outcome::Pass,
            residuals: BTreeMap::new(),
            eigenvalues: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    /// Record a residual and fail the entry if it exceeds `tol`.
    pub fn residual(mut self, name: &str, value: f64, tol: f64) -> Self {
        self.residuals.insert(name.to_string(), value);
        if !(value <= tol) {
            self.fail();
        }
        self
    }

    /// Record a number without affecting the verdict.
    pub fn value(mut self, name: &str, value: f64) -> Self {
        self.residuals.insert(name.to_string(), value);
        self
    }

    pub fn require(mut self, ok: bool) -> Self {
        if !ok {
            self.fail();
        }
        self
    }

    pub fn detail(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.details.insert(key.to_string(), v);
        self
    }

    pub fn eigenvalues(mut self, vals: Vec<f64>) -> Self {
        self.eigenvalues = vals;
        self
    }

    pub fn fail(&mut self) {
        self.pass = false;
        if self.outcome == Outcome::Pass {
            self.outcome = Outcome::Fail;
        }
    }

    pub fn inconclusive(mut self) -> Self {
        self.pass = false;
        self.outcome = Outcome::Inconclusive;
        self
    }
}

/// A full command report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub input: String,
    pub tol: f64,
    pub seed: u64,
    pub pass: bool,
    pub status: Outcome,
    pub entries: Vec<Entry>,
    pub timestamp: String,
}

impl Report {
    pub fn new(command: &str, input: &str, tol: f64, seed: u64) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            input: input.to_string(),
            tol,
            seed,
            pass: true,
            status: Outcome::Pass,
            entries: Vec::new(),
            timestamp: String::new(),
        }
    }

    pub fn push(&mut self, entry: Entry) {
        self.entries.push(entry);
        self.refresh();
    }

    pub fn extend(&mut self, entries: impl IntoIterator<Item = Entry>) {
        self.entries.extend(entries);
        self.refresh();
    }

    /// A failure outranks an inconclusive entry.
    fn refresh(&mut self) {
        let outcomes = self.entries.iter().map(|e| e.outcome);
        self.status = outcomes.fold(Outcome::Pass, |acc, o| match (acc, o) {
            (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
            (Outcome::Inconclusive, _) | (_, Outcome::Inconclusive) => Outcome::Inconclusive,
            _ => Outcome::Pass,
        });
        self.pass = self.status == Outcome::Pass;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_outranks_inconclusive() {
        let mut r = Report::new("x", "y", 1e-9, 0);
        r.push(Entry::new("a").inconclusive());
        assert_eq!(r.status, Outcome::Inconclusive);
        r.push(Entry::new("b").residual("r", 1.0, 1e-9));
        assert_eq!(r.status, Outcome::Fail);
        assert!(!r.pass);
    }

    #[test]
    fn nan_residual_fails() {
        let e = Entry::new("a").residual("r", f64::NAN, 1.0);
        assert!(!e.pass);
    }
}
