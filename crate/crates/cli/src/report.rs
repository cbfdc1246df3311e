use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    /// Which statement the check exercises, in words.
    pub anchor: &'static str,
    pub status: Status,
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    pub details: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Check {
    pub fn new(id: impl Into<String>, anchor: &'static str, pass: bool, details: Value) -> Self {
        Check {
            id: id.into(),
            anchor,
            status: if pass { Status::Pass } else { Status::Fail },
            first_failure: None,
            timing_ms: None,
            details,
            elapsed: Duration::ZERO,
        }
    }

    pub fn skipped(id: impl Into<String>, anchor: &'static str, reason: &str) -> Self {
        let mut c = Check::new(id, anchor, true, serde_json::json!({ "reason": reason }));
        c.status = Status::Skipped;
        c
    }

    pub fn with_failure(mut self, at: Option<String>) -> Self {
        self.first_failure = at;
        self
    }

    /// A check whose computation errored out counts as failed.
    pub fn errored(id: impl Into<String>, anchor: &'static str, err: &nekrasov_core::Error) -> Self {
        Check::new(id, anchor, false, serde_json::json!({ "error": err.to_string() }))
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
    /// Computed objects, such as the coefficients from compute-z.
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Report {
    pub fn new(command: &str, config: Value, mut checks: Vec<Check>, timings: bool) -> Self {
        if timings {
            for c in &mut checks {
                c.timing_ms = Some(c.elapsed.as_millis());
            }
        }
        let pass = checks.iter().all(|c| c.status != Status::Fail);
        Report {
            command: command.to_string(),
            config,
            checks,
            pass,
            data: Value::Null,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = write!(s, "{tag}  {:<32} {}", c.id, c.anchor);
            if let Some(f) = &c.first_failure {
                let _ = write!(s, "  (first failure at {f})");
            }
            let _ = writeln!(s, "  [{:.2?}]", c.elapsed);
        }
        let _ = writeln!(s, "{}: {}", self.command, if self.pass { "pass" } else { "FAIL" });
        s
    }
}

/// Runs `f`, recording its wall time on the resulting checks.
pub fn timed(f: impl FnOnce() -> Vec<Check>) -> Vec<Check> {
    let t = std::time::Instant::now();
    let mut out = f();
    let el = t.elapsed();
    let share = el / out.len().max(1) as u32;
    for c in &mut out {
        if c.elapsed.is_zero() {
            c.elapsed = share;
        }
    }
    out
}
