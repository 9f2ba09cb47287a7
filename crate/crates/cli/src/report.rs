use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

/// One audit run inside a task.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// The property the audit exercises.
    pub property: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct TaskReport {
    pub op: String,
    pub passed: bool,
    pub values: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub witnesses: Vec<String>,
}

impl TaskReport {
    pub fn new(op: &str) -> TaskReport {
        TaskReport { op: op.into(), passed: true, ..TaskReport::default() }
    }

    pub fn value(&mut self, key: &str, v: impl ToString) -> &mut Self {
        self.values.insert(key.into(), v.to_string());
        self
    }

    pub fn check(&mut self, name: &str, property: &str, passed: bool, detail: impl Into<String>) -> &mut Self {
        self.passed &= passed;
        self.checks.push(Check { name: name.into(), property: property.into(), passed, detail: detail.into() });
        self
    }

    pub fn witness(&mut self, w: impl Into<String>) -> &mut Self {
        self.witnesses.push(w.into());
        self
    }
}

/// Task results keyed by task name; maps keep the output order fixed.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ReportDoc {
    pub command: String,
    pub passed: bool,
    pub tasks: BTreeMap<String, TaskReport>,
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

impl ReportDoc {
    pub fn new(command: &str) -> ReportDoc {
        ReportDoc { command: command.into(), passed: true, tasks: BTreeMap::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, task: TaskReport) {
        self.passed &= task.passed;
        self.tasks.insert(name.into(), task);
    }

    pub fn machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for (name, t) in &self.tasks {
            let _ = writeln!(out, "{} {name}", verdict(t.passed));
            for (k, v) in &t.values {
                let _ = writeln!(out, "  {k}: {v}");
            }
            for c in &t.checks {
                let _ = write!(out, "  {} {} ({})", verdict(c.passed), c.name, c.property);
                let _ = if c.detail.is_empty() { writeln!(out) } else { writeln!(out, ": {}", c.detail) };
            }
            for w in &t.witnesses {
                let _ = writeln!(out, "  witness: {w}");
            }
        }
        let _ = writeln!(out, "{}: {} task(s), {}", self.command, self.tasks.len(), verdict(self.passed));
        out
    }
}
