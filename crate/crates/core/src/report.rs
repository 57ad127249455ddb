//! Pass/fail reports shared by the pipelines and the CLI.

use serde::Serialize;
use serde_json::Value;

/// One named assertion with its evidence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

/// The outcome of one command: its result payload and every check run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub result: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report { command: command.into(), result: Value::Null, checks: Vec::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<Value>) -> bool {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
        passed
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One JSON object per check, then a summary line carrying the result.
    pub fn json_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .checks
            .iter()
            .map(|c| serde_json::json!({"command": self.command, "check": c}).to_string())
            .collect();
        let first_failure = self.failures().next().map(|c| c.name.clone());
        lines.push(
            serde_json::json!({
                "command": self.command,
                "result": self.result,
                "passed": self.passed(),
                "checks": self.checks.len(),
                "first_failure": first_failure,
            })
            .to_string(),
        );
        lines
    }

    /// Human-readable `PASS`/`FAIL` lines.
    pub fn text_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .checks
            .iter()
            .map(|c| format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, compact(&c.detail)))
            .collect();
        let failed = self.failures().count();
        lines.push(format!("{}: {} checks, {} failed", self.command, self.checks.len(), failed));
        lines
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_fail_accounting() {
        let mut r = Report::new("demo");
        assert!(r.passed());
        r.check("one", true, "fine");
        assert!(r.passed());
        r.check("two", false, serde_json::json!({"n": 3}));
        assert!(!r.passed());
        let lines = r.json_lines();
        assert_eq!(lines.len(), 3);
        let summary: Value = serde_json::from_str(&lines[2]).unwrap();
        assert_eq!(summary["first_failure"], "two");
        assert_eq!(summary["passed"], false);
        assert_eq!(r.text_lines()[1], "FAIL two: {\"n\":3}");
    }
}
