//! Structured outcomes shared by every verification suite.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Largest scaled residual.
    Residual(f64),
    /// First index (exponent or coefficient) where two sides differ.
    FirstMismatch(i64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Metric>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub achieved_prec: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub required_prec: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl CheckRecord {
    fn with_status(name: impl Into<String>, status: Status) -> Self {
        CheckRecord {
            name: name.into(),
            status,
            metric: None,
            achieved_prec: None,
            required_prec: None,
            detail: None,
            elapsed_ms: None,
        }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Self::with_status(name, Status::Pass)
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::with_status(name, Status::Fail).detail(detail)
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::with_status(name, Status::Skipped).detail(reason)
    }

    pub fn from_bool(name: impl Into<String>, ok: bool) -> Self {
        Self::with_status(name, if ok { Status::Pass } else { Status::Fail })
    }

    /// Exact comparison outcome: `None` means the sides agree everywhere they are known.
    pub fn from_mismatch(name: impl Into<String>, mismatch: Option<i64>) -> Self {
        let mut r = Self::from_bool(name, mismatch.is_none());
        r.metric = mismatch.map(Metric::FirstMismatch);
        r
    }

    /// Numeric outcome: passes when the residual is finite and at most `tol`.
    pub fn from_residual(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        let mut r = Self::from_bool(name, residual.is_finite() && residual <= tol);
        r.metric = Some(Metric::Residual(residual));
        if !residual.is_finite() {
            r.detail = Some("non-finite residual".into());
        }
        r
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    /// Records achieved precision; the check fails if it falls short of `required`.
    pub fn precision(mut self, achieved: i64, required: i64) -> Self {
        self.achieved_prec = Some(achieved);
        self.required_prec = Some(required);
        if achieved < required && self.status == Status::Pass {
            self.status = Status::Fail;
            self.detail = Some(format!("achieved precision {achieved} below required {required}"));
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: Value,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub data: Map<String, Value>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, params: Value) -> Self {
        SuiteReport { suite: suite.into(), params, checks: Vec::new(), data: Map::new() }
    }

    pub fn push(&mut self, c: CheckRecord) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(cs);
    }

    pub fn record(&mut self, key: impl Into<String>, v: Value) {
        self.data.insert(key.into(), v);
    }

    /// No check failed (skips do not count against a suite).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }
}

/// Scaled residual `|a - b| / (|a| + |b| + 1)`.
pub fn rel_residual(a: num_complex::Complex64, b: num_complex::Complex64) -> f64 {
    (a - b).norm() / (a.norm() + b.norm() + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_shortfall_fails() {
        let c = CheckRecord::pass("x").precision(10, 20);
        assert_eq!(c.status, Status::Fail);
        let c = CheckRecord::pass("x").precision(20, 20);
        assert_eq!(c.status, Status::Pass);
    }

    #[test]
    fn skips_do_not_fail_suites() {
        let mut r = SuiteReport::new("s", Value::Null);
        r.push(CheckRecord::skipped("a", "why"));
        r.push(CheckRecord::pass("b"));
        assert!(r.passed());
        r.push(CheckRecord::from_residual("c", f64::NAN, 1.0));
        assert!(!r.passed());
    }
}
