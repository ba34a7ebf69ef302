use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use herman_core::report::VerificationReport;

use crate::JobSpec;

pub const TOOL: &str = "herman";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The job settings echoed into every report, defaults included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub command: String,
    pub input: Option<String>,
    pub example: Option<u8>,
    pub samples: usize,
    pub seed: u64,
    pub precision: u32,
    pub degree_cap: usize,
}

/// A remark attached to a report that is not itself a pass/fail check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Note {
    pub kind: String,
    pub message: String,
}

impl Note {
    pub fn new(kind: &str, message: impl Into<String>) -> Self {
        Note {
            kind: kind.to_string(),
            message: message.into(),
        }
    }
}

/// One report per run: settings, verdict, command-specific results, the
/// check records, and a rendered text summary of all of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Document {
    pub tool: String,
    pub version: String,
    pub settings: Settings,
    pub verdict: String,
    pub results: Value,
    pub notes: Vec<Note>,
    pub report: VerificationReport,
    pub summary: String,
}

impl Document {
    pub fn new(spec: &JobSpec, results: Value, notes: Vec<Note>, report: VerificationReport) -> Self {
        let settings = Settings {
            command: spec.command.as_str().to_string(),
            input: spec.input.as_ref().map(|p| p.display().to_string()),
            example: spec.example,
            samples: spec.samples,
            seed: spec.seed,
            precision: spec.precision,
            degree_cap: spec.degree_cap,
        };
        let verdict = if report.passed() { "pass" } else { "fail" }.to_string();
        let mut doc = Document {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            settings,
            verdict,
            results,
            notes,
            report,
            summary: String::new(),
        };
        doc.summary = doc.render_summary();
        doc
    }

    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    fn render_summary(&self) -> String {
        let s = &self.settings;
        let mut out = String::new();
        writeln!(out, "{} {} {}", self.tool, self.version, s.command).unwrap();
        if let Some(input) = &s.input {
            writeln!(out, "input: {input}").unwrap();
        }
        if let Some(example) = s.example {
            writeln!(out, "example: {example}").unwrap();
        }
        writeln!(
            out,
            "samples {} | seed {} | precision {} | degree cap {}",
            s.samples, s.seed, s.precision, s.degree_cap
        )
        .unwrap();
        if let Value::Object(map) = &self.results {
            if !map.is_empty() {
                writeln!(out).unwrap();
                for (key, value) in map {
                    render_value(&mut out, key, value, 0);
                }
            }
        }
        if !self.notes.is_empty() {
            writeln!(out).unwrap();
            for note in &self.notes {
                writeln!(out, "note ({}): {}", note.kind, note.message).unwrap();
            }
        }
        writeln!(out).unwrap();
        write!(out, "{}", self.report).unwrap();
        let failed = self.report.failed_checks().count();
        writeln!(
            out,
            "verdict: {} ({} checks, {} failed)",
            self.verdict,
            self.report.checks.len(),
            failed
        )
        .unwrap();
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
                s.push('\n');
                s
            }
            Format::Text => self.summary.clone(),
        }
    }
}

fn render_value(out: &mut String, key: &str, value: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            writeln!(out, "{pad}{key}:").unwrap();
            for (k, v) in map {
                render_value(out, k, v, depth + 1);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            writeln!(out, "{pad}{key}: [{}]", parts.join(", ")).unwrap();
        }
        Value::Array(items) => {
            writeln!(out, "{pad}{key}:").unwrap();
            for (i, v) in items.iter().enumerate() {
                render_value(out, &format!("[{i}]"), v, depth + 1);
            }
        }
        v => writeln!(out, "{pad}{key}: {}", scalar(v)).unwrap(),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".to_string(),
        other => other.to_string(),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Text,
}
