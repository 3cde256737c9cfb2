//! JSON report types shared by the verification suites and the CLI.
//!
//! All JSON documents carry `"schema": 1`. Complex numbers are emitted as
//! two-element arrays `[re, im]`. Value commands emit no timing fields so
//! their output is byte-reproducible; `verify` includes `runtime_ms`.

use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

pub const SCHEMA: u32 = 1;

pub fn complex(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified identity: two independently computed routes and the
/// tolerance the comparison must meet.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub route_a: [f64; 2],
    pub route_b: [f64; 2],
    pub abs_diff: f64,
    pub rel_diff: f64,
    /// Numerical tolerance; interpreted per `tolerance_kind`.
    pub tolerance: f64,
    /// "abs": abs_diff ≤ tolerance; "rel": rel_diff ≤ tolerance.
    pub tolerance_kind: &'static str,
    pub status: Status,
    /// Truncation budgets that produced the routes (deterministic order).
    pub truncation: BTreeMap<String, serde_json::Value>,
}

impl Check {
    pub fn abs(id: impl Into<String>, a: Complex64, b: Complex64, tol: f64) -> Self {
        let abs_diff = (a - b).norm();
        let scale = a.norm().max(b.norm());
        Check {
            id: id.into(),
            route_a: complex(a),
            route_b: complex(b),
            abs_diff,
            rel_diff: if scale > 0.0 { abs_diff / scale } else { 0.0 },
            tolerance: tol,
            tolerance_kind: "abs",
            status: if abs_diff <= tol { Status::Pass } else { Status::Fail },
            truncation: BTreeMap::new(),
        }
    }

    pub fn rel(id: impl Into<String>, a: Complex64, b: Complex64, tol: f64) -> Self {
        let abs_diff = (a - b).norm();
        let scale = a.norm().max(b.norm());
        let rel_diff = if scale > 0.0 { abs_diff / scale } else { 0.0 };
        Check {
            id: id.into(),
            route_a: complex(a),
            route_b: complex(b),
            abs_diff,
            rel_diff,
            tolerance: tol,
            tolerance_kind: "rel",
            status: if rel_diff <= tol { Status::Pass } else { Status::Fail },
            truncation: BTreeMap::new(),
        }
    }

    pub fn with_truncation(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.truncation.insert(key.to_string(), value.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// The result of one named suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub runtime_ms: u128,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>, runtime_ms: u128) -> Self {
        SuiteReport {
            suite: suite.into(),
            passed: checks.iter().all(Check::passed),
            runtime_ms,
            checks,
        }
    }
}

/// Top-level document for `esms verify`.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyOutput {
    pub schema: u32,
    pub command: &'static str,
    pub character: esms::CharacterLabel,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

/// Top-level document for single-value commands.
#[derive(Debug, Clone, Serialize)]
pub struct ValueOutput {
    pub schema: u32,
    pub command: &'static str,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub value: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub err_est: Option<f64>,
}

impl ValueOutput {
    pub fn new(command: &'static str, value: Complex64) -> Self {
        ValueOutput {
            schema: SCHEMA,
            command,
            inputs: BTreeMap::new(),
            value: complex(value),
            err_est: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn with_err(mut self, err: f64) -> Self {
        self.err_est = Some(err);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("value documents always serialize")
    }
}

impl VerifyOutput {
    pub fn new(character: esms::CharacterLabel, suites: Vec<SuiteReport>) -> Self {
        VerifyOutput {
            schema: SCHEMA,
            command: "verify",
            character,
            passed: suites.iter().all(|s| s.passed),
            suites,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_status_thresholds() {
        let a = Complex64::new(1.0, 0.0);
        let b = Complex64::new(1.0 + 5e-7, 0.0);
        assert!(Check::abs("x", a, b, 1e-6).passed());
        assert!(!Check::abs("x", a, b, 1e-7).passed());
        assert!(Check::rel("x", a, b, 1e-6).passed());
        assert!(!Check::rel("x", a, b, 1e-7).passed());
    }

    #[test]
    fn json_shape_is_stable() {
        let c = Check::abs("demo", Complex64::new(0.5, -1.0), Complex64::new(0.5, -1.0), 1e-9)
            .with_truncation("c_max", 550);
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"route_a\":[0.5,-1.0]"));
        assert!(s.contains("\"status\":\"pass\""));
        assert!(s.contains("\"truncation\":{\"c_max\":550}"));
    }
}
