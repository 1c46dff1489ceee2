use std::io::Write;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedBudget,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::SkippedBudget => "SKIP",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

/// Everything a command reports. Timing goes to stderr only, so the JSON
/// form is reproducible byte for byte.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tier: Option<String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> RunReport {
        RunReport {
            schema: SCHEMA,
            command,
            tier: None,
            checks: Vec::new(),
            result: Value::Null,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, status: Status, details: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status,
            details: details.into(),
        });
    }

    pub fn pass(&mut self, name: impl Into<String>, details: impl Into<String>) {
        self.check(name, Status::Pass, details);
    }

    pub fn expect(&mut self, name: impl Into<String>, ok: bool, details: impl Into<String>) {
        self.check(name, if ok { Status::Pass } else { Status::Fail }, details);
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed())
    }

    pub fn write(&self, json: bool, out: &mut impl Write) -> std::io::Result<()> {
        if json {
            serde_json::to_writer_pretty(&mut *out, self)?;
            writeln!(out)
        } else {
            for c in &self.checks {
                if c.details.is_empty() {
                    writeln!(out, "{} {}", c.status.tag(), c.name)?;
                } else {
                    writeln!(out, "{} {}: {}", c.status.tag(), c.name, c.details)?;
                }
            }
            Ok(())
        }
    }
}
