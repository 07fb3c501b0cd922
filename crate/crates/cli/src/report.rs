use std::fmt::Write as _;

use artinian::basechange::CheckRecord;
use serde_json::{json, Value};

pub const TOOL: &str = "artinian";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Pass = 0,
    Fail = 1,
    InputError = 2,
}

impl Outcome {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceReport {
    pub id: String,
    /// Set when the instance never reached verification.
    pub input_error: Option<String>,
    pub checks: Vec<CheckRecord>,
    pub data: Value,
}

impl InstanceReport {
    pub fn new(id: impl Into<String>) -> Self {
        InstanceReport {
            id: id.into(),
            input_error: None,
            checks: Vec::new(),
            data: json!({}),
        }
    }

    pub fn rejected(id: impl Into<String>, error: impl ToString) -> Self {
        InstanceReport {
            input_error: Some(error.to_string()),
            ..Self::new(id)
        }
    }

    pub fn check(
        &mut self,
        check: &str,
        identity: &str,
        subject: &str,
        passed: bool,
        detail: impl Into<String>,
    ) {
        self.checks.push(CheckRecord {
            check: check.into(),
            identity: identity.into(),
            subject: subject.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn outcome(&self) -> Outcome {
        if self.input_error.is_some() {
            Outcome::InputError
        } else if self.checks.iter().all(|c| c.passed) {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub depth: usize,
    pub instances: Vec<InstanceReport>,
}

impl Report {
    pub fn new(command: &str, seed: u64, depth: usize) -> Self {
        Report {
            command: command.into(),
            seed,
            depth,
            instances: Vec::new(),
        }
    }

    /// Worst outcome over all instances; an empty report passes.
    pub fn outcome(&self) -> Outcome {
        self.instances
            .iter()
            .map(InstanceReport::outcome)
            .max()
            .unwrap_or(Outcome::Pass)
    }

    pub fn to_json(&self) -> Value {
        let instances: Vec<Value> = self
            .instances
            .iter()
            .map(|inst| {
                let checks: Vec<Value> = inst
                    .checks
                    .iter()
                    .map(|c| {
                        json!({
                            "check": c.check,
                            "identity": c.identity,
                            "subject": c.subject,
                            "passed": c.passed,
                            "detail": c.detail,
                        })
                    })
                    .collect();
                let mut v = json!({
                    "id": inst.id,
                    "passed": inst.outcome() == Outcome::Pass,
                    "checks": checks,
                    "data": inst.data,
                });
                if let Some(e) = &inst.input_error {
                    v["error"] = json!(e);
                }
                v
            })
            .collect();
        json!({
            "tool": TOOL,
            "version": VERSION,
            "command": self.command,
            "seed": self.seed,
            "depth": self.depth,
            "passed": self.outcome() == Outcome::Pass,
            "instances": instances,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => crate::instance::canonical_string(&self.to_json()),
            Format::Text => self.to_text(),
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{TOOL} {VERSION} {} (seed {}, depth {})",
            self.command, self.seed, self.depth
        );
        for inst in &self.instances {
            let verdict = match inst.outcome() {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::InputError => "ERROR",
            };
            let _ = writeln!(out, "\n[{verdict}] {}", inst.id);
            if let Some(e) = &inst.input_error {
                let _ = writeln!(out, "  {e}");
            }
            render_data(&mut out, &inst.data, "  ");
            for c in &inst.checks {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                let _ = write!(
                    out,
                    "  {mark} {:<26} {:<22} {}",
                    c.check, c.subject, c.identity
                );
                if c.detail.starts_with('(') {
                    let _ = write!(out, "  {}", c.detail);
                } else if !c.detail.is_empty() {
                    let _ = write!(out, "  ({})", c.detail);
                }
                out.push('\n');
            }
        }
        let total: usize = self.instances.iter().map(|i| i.checks.len()).sum();
        let failed: usize = self
            .instances
            .iter()
            .flat_map(|i| &i.checks)
            .filter(|c| !c.passed)
            .count();
        let _ = writeln!(
            out,
            "\n{} instance(s), {total} check(s), {failed} failed: {}",
            self.instances.len(),
            if self.outcome() == Outcome::Pass {
                "PASS"
            } else {
                "FAIL"
            }
        );
        out
    }
}

/// Scalars inline, objects indented; arrays of scalars joined with commas.
fn render_data(out: &mut String, v: &Value, indent: &str) {
    let Value::Object(map) = v else { return };
    for (k, v) in map {
        match v {
            Value::Object(_) => {
                let _ = writeln!(out, "{indent}{k}:");
                render_data(out, v, &format!("{indent}  "));
            }
            other => {
                let _ = writeln!(out, "{indent}{k} = {}", inline(other));
            }
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!(
            "({})",
            items.iter().map(inline).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outcome_is_worst_instance() {
        let mut r = Report::new("suite", 0, 3);
        assert_eq!(r.outcome(), Outcome::Pass);
        let mut ok = InstanceReport::new("a");
        ok.check("c", "x = x", "", true, "");
        r.instances.push(ok);
        assert_eq!(r.outcome().code(), 0);
        let mut bad = InstanceReport::new("b");
        bad.check("c", "x = y", "", false, "");
        r.instances.push(bad);
        assert_eq!(r.outcome().code(), 1);
        r.instances
            .push(InstanceReport::rejected("c", "SchemaError"));
        assert_eq!(r.outcome().code(), 2);
        let v = r.to_json();
        assert_eq!(v["passed"], json!(false));
        assert_eq!(v["instances"][2]["error"], json!("SchemaError"));
        assert!(r.render(Format::Text).contains("[ERROR] c"));
    }
}
