//! Check reports with a stable JSON schema.
//!
//! A report's `passed` field is the conjunction of all sub-assertions in its
//! details. Identical configs produce byte-identical JSON modulo the
//! `timing_ms` field (maps are key-sorted).

use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct Report {
    pub check: String,
    pub input: Value,
    pub passed: bool,
    pub details: Value,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(check: impl Into<String>, input: Value, passed: bool, details: Value) -> Self {
        Report {
            check: check.into(),
            input,
            passed,
            details,
            timing_ms: 0,
        }
    }

    pub fn timed(
        check: impl Into<String>,
        input: Value,
        f: impl FnOnce() -> (bool, Value),
    ) -> Self {
        let start = std::time::Instant::now();
        let (passed, details) = f();
        Report {
            check: check.into(),
            input,
            passed,
            details,
            timing_ms: start.elapsed().as_millis(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": crate::SCHEMA,
            "version": env!("CARGO_PKG_VERSION"),
            "check": self.check,
            "input": self.input,
            "passed": self.passed,
            "details": self.details,
            "timing_ms": self.timing_ms,
        })
    }

    pub fn human(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("[{}] {} ({} ms)", verdict, self.check, self.timing_ms)
    }
}

/// Aggregate of several reports, sorted by check id for determinism.
pub fn aggregate_json(reports: &[Report]) -> Value {
    json!({
        "schema": crate::SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "passed": reports.iter().all(|r| r.passed),
        "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
    })
}
