//! Per-identity verification records.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::series::{Series, TruncationPolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ResolvedWithNote,
}

impl Status {
    pub fn passed(self) -> bool {
        !matches!(self, Status::Fail)
    }
}

/// Outcome of one identity check.
///
/// `status` is `Pass` (or `ResolvedWithNote`) iff every recorded residual is
/// identically zero, or within the stated tolerance for numeric checks.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub caps: BTreeMap<String, u32>,
    pub status: Status,
    pub residual: Value,
    pub runtime_ms: u128,
    pub notes: Vec<String>,
    #[serde(skip)]
    started: Option<Instant>,
    #[serde(skip)]
    cases: usize,
    #[serde(skip)]
    failures: BTreeMap<String, Value>,
    #[serde(skip)]
    resolved: bool,
    #[serde(skip)]
    failed: usize,
}

impl VerificationReport {
    pub fn new(identity: &str) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            params: BTreeMap::new(),
            caps: BTreeMap::new(),
            status: Status::Pass,
            residual: Value::from(0),
            runtime_ms: 0,
            notes: Vec::new(),
            started: Some(Instant::now()),
            cases: 0,
            failures: BTreeMap::new(),
            failed: 0,
            resolved: false,
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl fmt::Display) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn with_policy(mut self, p: &TruncationPolicy) -> Self {
        self.set_policy(p);
        self
    }

    pub fn set_policy(&mut self, p: &TruncationPolicy) {
        self.caps.insert("qt".into(), p.qt);
        self.caps.insert("x".into(), p.x);
        self.caps.insert("params".into(), p.params);
        self.caps.insert("z".into(), p.z);
    }

    pub fn cap(mut self, key: &str, v: u32) -> Self {
        self.caps.insert(key.to_string(), v);
        self
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Marks the run as relying on an empirically resolved convention.
    pub fn resolved(&mut self, s: impl Into<String>) {
        self.resolved = true;
        self.notes.push(s.into());
    }

    /// Records a series residual for `case`; nonzero residuals fail.
    pub fn check_series(&mut self, case: impl Into<String>, residual: &Series) -> bool {
        self.cases += 1;
        if residual.is_zero() {
            true
        } else {
            self.failures.insert(case.into(), residual.dump_json());
            false
        }
    }

    /// Records a boolean subcase with an explanatory value on failure.
    pub fn check(&mut self, case: impl Into<String>, ok: bool, detail: Value) -> bool {
        self.cases += 1;
        if !ok {
            self.failures.insert(case.into(), detail);
        }
        ok
    }

    /// Records a numeric residual against a tolerance.
    pub fn check_numeric(&mut self, case: impl Into<String>, value: f64, tol: f64) -> bool {
        self.cases += 1;
        let ok = value.abs() < tol;
        let case = case.into();
        if !ok {
            self.failures.insert(case, Value::from(value));
        } else {
            self.residual = Value::from(value);
        }
        ok
    }

    /// Folds a finished report in under `label`: its cases count here, a
    /// failure becomes one failing entry carrying its residual, and its notes
    /// are kept once.
    pub fn merge(&mut self, label: impl Into<String>, sub: VerificationReport) {
        self.cases += sub.cases;
        match sub.status {
            Status::Fail => {
                self.failures.insert(label.into(), sub.residual);
            }
            Status::ResolvedWithNote => self.resolved = true,
            Status::Pass => {}
        }
        for n in sub.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
    }

    pub fn failed_cases(&self) -> usize {
        self.failed.max(self.failures.len())
    }

    pub fn cases(&self) -> usize {
        self.cases
    }

    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.runtime_ms = t.elapsed().as_millis();
        }
        self.params.insert("cases_checked".into(), self.cases.to_string());
        if self.failures.is_empty() {
            self.status = if self.resolved { Status::ResolvedWithNote } else { Status::Pass };
        } else {
            self.status = Status::Fail;
            self.failed = self.failures.len();
            let failures = std::mem::take(&mut self.failures);
            self.residual = serde_json::to_value(failures).unwrap_or(Value::Null);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:?} cases={} runtime={}ms",
            self.identity, self.status, self.cases, self.runtime_ms
        )?;
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
