//! Machine-readable check reports shared by the library and the CLI.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded value with no pass/fail claim attached.
    Measured,
    /// A bounded search ran out before deciding.
    Exhausted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Measured => "measured",
            Status::Exhausted => "exhausted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, details: Value) -> Self {
        Check {
            name: name.into(),
            status,
            details,
        }
    }

    pub fn pass_if(name: impl Into<String>, ok: bool, details: Value) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail }, details)
    }

    pub fn measured(name: impl Into<String>, details: Value) -> Self {
        Self::new(name, Status::Measured, details)
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    /// Wall-clock seconds; left empty unless timing was requested so that
    /// repeated runs produce identical bytes.
    pub elapsed: Option<f64>,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: Value, result: Value, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report {
            command: command.into(),
            inputs,
            result,
            checks,
            elapsed: None,
        }
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if !self.inputs.is_null() {
            let _ = writeln!(out, "inputs: {}", compact(&self.inputs));
        }
        if !self.result.is_null() {
            let _ = writeln!(out, "result: {}", compact(&self.result));
        }
        for c in &self.checks {
            let _ = writeln!(out, "[{:>9}] {}", c.status.as_str(), c.name);
        }
        let _ = writeln!(
            out,
            "summary: {} pass, {} fail, {} measured, {} exhausted",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Measured),
            self.count(Status::Exhausted)
        );
        if let Some(t) = self.elapsed {
            let _ = writeln!(out, "elapsed: {t:.3}s");
        }
        out
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("value serializes")
}
