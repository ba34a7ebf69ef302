//! Command-line front end: reads map, region and parameter records, runs
//! the verification pipelines of `herman-core`, and renders one
//! deterministic report document per run.

mod document;
mod examples;
mod input;
mod json;
mod pipelines;

use std::fs;
use std::path::PathBuf;

use thiserror::Error;

pub use document::{Document, Format, Note, Settings, TOOL, VERSION};
pub use examples::{example_inputs, ExampleInputs};
pub use input::{ConstructInput, HermanInput, SiegelInput};

use herman_core::ratmap::DEFAULT_DEGREE_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    VerifySiegel,
    ConstructHerman,
    VerifyHerman,
    Reproduce,
    Selftest,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::VerifySiegel => "verify-siegel",
            Command::ConstructHerman => "construct-herman",
            Command::VerifyHerman => "verify-herman",
            Command::Reproduce => "reproduce",
            Command::Selftest => "selftest",
        }
    }

    fn needs_input(&self) -> bool {
        !matches!(self, Command::Reproduce | Command::Selftest)
    }
}

/// Everything that determines a run; equal specs give byte-identical
/// reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub samples: usize,
    pub seed: u64,
    pub precision: u32,
    pub degree_cap: usize,
    pub example: Option<u8>,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Where `construct-herman` writes the record of `Q`.
    pub map_out: Option<PathBuf>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            input: None,
            samples: 32,
            seed: 0,
            precision: 8,
            degree_cap: DEFAULT_DEGREE_CAP,
            example: None,
            format: Format::Json,
            out: None,
            map_out: None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}:{column}: {message}")]
    Schema {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

/// Runs a job and returns its report; errors are input or usage errors.
pub fn build_document(spec: &JobSpec) -> Result<Document, CliError> {
    if spec.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if spec.precision == 0 {
        return Err(CliError::Usage("--precision must be at least 1".into()));
    }
    let input = match (&spec.input, spec.command.needs_input()) {
        (Some(path), true) => Some(path.as_path()),
        (None, true) => return Err(CliError::Usage(format!("{} needs --input <path>", spec.command.as_str()))),
        (_, false) => None,
    };
    match spec.command {
        Command::Analyze => pipelines::analyze(spec, input.unwrap()),
        Command::VerifySiegel => pipelines::verify_siegel(spec, input.unwrap()),
        Command::ConstructHerman => pipelines::construct_herman(spec, input.unwrap()),
        Command::VerifyHerman => pipelines::verify_herman(spec, input.unwrap()),
        Command::Selftest => Ok(pipelines::selftest(spec)),
        Command::Reproduce => match spec.example {
            Some(n @ (1 | 2)) => Ok(examples::reproduce(spec, n)),
            Some(n) => Err(CliError::Usage(format!("--example must be 1 or 2, got {n}"))),
            None => Err(CliError::Usage("reproduce needs --example <1|2>".into())),
        },
    }
}

fn write_file(path: &std::path::Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Runs a job, writes its outputs, and returns the exit status together
/// with the rendered report: 0 when every check passes, 1 when one fails,
/// 2 on input errors.
pub fn run(spec: &JobSpec) -> (i32, Result<String, CliError>) {
    let doc = match build_document(spec) {
        Ok(doc) => doc,
        Err(e) => return (2, Err(e)),
    };
    let rendered = doc.render(spec.format);
    if let Some(path) = &spec.out {
        if let Err(e) = write_file(path, &rendered) {
            return (2, Err(e));
        }
    }
    if let (Some(path), Some(q)) = (&spec.map_out, doc.results.get("q").and_then(|q| q.get("record"))) {
        let mut text = serde_json::to_string_pretty(q).expect("records serialize");
        text.push('\n');
        if let Err(e) = write_file(path, &text) {
            return (2, Err(e));
        }
    }
    (if doc.passed() { 0 } else { 1 }, Ok(rendered))
}
