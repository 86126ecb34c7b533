//! Reports and their replay.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::exit;
use crate::problem::Overrides;
use crate::tasks::{execute, Outcome, Status, Task};
use crate::CliError;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Input {
    pub path: Option<String>,
    /// The full config text, so the report can be replayed without it.
    pub source: Option<String>,
}

pub struct Report {
    task: Task,
    input: Input,
    options: Overrides,
    outcome: Outcome,
    elapsed_ms: u128,
}

impl Report {
    pub fn run(
        task: Task,
        path: Option<String>,
        source: Option<String>,
        options: Overrides,
    ) -> Result<Report, CliError> {
        let t = Instant::now();
        let outcome = execute(task, source.as_deref(), &options)?;
        Ok(Report {
            task,
            input: Input { path, source },
            options,
            outcome,
            elapsed_ms: t.elapsed().as_millis(),
        })
    }

    pub fn exit_code(&self) -> u8 {
        match self.outcome.status {
            Status::Definite => exit::DEFINITE,
            Status::Inconclusive => exit::INCONCLUSIVE,
            Status::Mismatch => exit::MISMATCH,
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "record": "report",
            "schema": SCHEMA,
            "task": self.task,
            "input": self.input,
            "options": self.options,
            "result": self.outcome.result,
            "status": self.outcome.status,
            "trust": self.outcome.trust,
            "elapsed_ms": self.elapsed_ms,
        })
    }

    pub fn machine_lines(&self) -> Vec<String> {
        self.outcome
            .records
            .iter()
            .chain(std::iter::once(&self.to_value()))
            .map(|v| v.to_string())
            .collect()
    }

    pub fn human(&self) -> String {
        let mut s = format!("task: {}\n", self.task);
        if let Some(p) = &self.input.path {
            s.push_str(&format!("config: {p}\n"));
        }
        for l in &self.outcome.lines {
            s.push_str(l);
            s.push('\n');
        }
        s.push_str(&format!("trust: {}\n", self.outcome.trust));
        s.push_str(&format!("elapsed: {} ms\n", self.elapsed_ms));
        s
    }
}

fn without_timing(mut v: Value) -> Value {
    if let Some(m) = v.as_object_mut() {
        m.remove("elapsed_ms");
    }
    v
}

pub struct ReplayOutcome {
    pub task: String,
    pub identical: bool,
    /// Top-level fields that differ.
    pub differences: Vec<String>,
}

impl ReplayOutcome {
    pub fn summary(&self) -> String {
        if self.identical {
            format!("replay of {}: identical", self.task)
        } else {
            format!(
                "replay of {}: differs in {}",
                self.task,
                self.differences.join(", ")
            )
        }
    }

    pub fn to_json_line(&self) -> String {
        json!({
            "record": "replay",
            "schema": SCHEMA,
            "task": self.task,
            "identical": self.identical,
            "differences": self.differences,
        })
        .to_string()
    }
}

/// Re-runs the last `report` record of a machine-format output.
pub fn replay(text: &str) -> Result<ReplayOutcome, CliError> {
    let original: Value = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .filter_map(|l| serde_json::from_str::<Value>(l).ok())
        .rfind(|v| v["record"] == "report")
        .ok_or_else(|| CliError::Input("no report record found".into()))?;
    if original["schema"] != json!(SCHEMA) {
        return Err(CliError::Input(format!(
            "unsupported report schema {}",
            original["schema"]
        )));
    }
    let task: Task = original["task"]
        .as_str()
        .ok_or_else(|| CliError::Input("report has no task".into()))?
        .parse()?;
    let input: Input = serde_json::from_value(original["input"].clone())
        .map_err(|e| CliError::Input(format!("report input: {e}")))?;
    let options: Overrides = serde_json::from_value(original["options"].clone())
        .map_err(|e| CliError::Input(format!("report options: {e}")))?;
    let again = Report::run(task, input.path, input.source, options)?.to_value();
    let (a, b) = (without_timing(original), without_timing(again));
    let mut differences: Vec<String> = Vec::new();
    if let (Some(x), Some(y)) = (a.as_object(), b.as_object()) {
        for k in x.keys().chain(y.keys()) {
            if x.get(k) != y.get(k) && !differences.contains(k) {
                differences.push(k.clone());
            }
        }
    }
    Ok(ReplayOutcome {
        task: task.name().into(),
        identical: a == b,
        differences,
    })
}
