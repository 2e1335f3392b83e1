use std::time::Duration;

use serde_json::{Map, Value};
use superfock_core::Error;

pub const SCHEMA: &str = "superfock/1";

/// A finished run, renderable as text or JSON.
pub struct Report {
    pub command: &'static str,
    pub passed: bool,
    pub lines: Vec<String>,
    pub body: Map<String, Value>,
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, passed: true, lines: Vec::new(), body: Map::new(), failures: Vec::new() }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn field(&mut self, key: &str, value: impl serde::Serialize) {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.body.insert(key.to_string(), value);
    }

    /// Records the outcome of one claim; a failure keeps `detail`.
    pub fn claim(&mut self, ok: bool, claim: &str, detail: impl FnOnce() -> String) {
        if !ok {
            self.passed = false;
            self.failures.push(format!("{claim}: {}", detail()));
        }
    }

    pub fn render_text(&self, elapsed: Option<Duration>) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for f in &self.failures {
            out.push_str("FAILED ");
            out.push_str(f);
            out.push('\n');
        }
        out.push_str(if self.passed { "result: pass\n" } else { "result: fail\n" });
        if let Some(t) = elapsed {
            out.push_str(&format!("elapsed: {:.3}s\n", t.as_secs_f64()));
        }
        out
    }

    pub fn render_json(&self, elapsed: Option<Duration>) -> String {
        let mut root = self.body.clone();
        root.insert("schema".into(), SCHEMA.into());
        root.insert("command".into(), self.command.into());
        root.insert("passed".into(), self.passed.into());
        root.insert("failures".into(), self.failures.clone().into());
        if let Some(t) = elapsed {
            root.insert("elapsed_ms".into(), (t.as_millis() as u64).into());
        }
        serde_json::to_string_pretty(&Value::Object(root)).expect("JSON rendering")
    }
}

/// An error that prevented a report from being produced.
#[derive(Debug)]
pub struct CliError {
    pub usage: bool,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { usage: true, message: message.into() }
    }

    pub fn code(&self) -> u8 {
        if self.usage {
            2
        } else {
            1
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let usage = !matches!(
            e,
            Error::NotEigenvector { .. } | Error::Normalization(_) | Error::NotARoot(_) | Error::NotInOsp | Error::DivisionByZero
        );
        CliError { usage, message: e.to_string() }
    }
}
