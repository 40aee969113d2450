use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use setpair_core::{parse_system, AnySystem, Error, Variant};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    InputError = 2,
    CapExceeded = 3,
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { status: Status::InputError, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::CapExceeded(_) | Error::TooLarge { .. } | Error::GeneralPositionExhausted { .. } => Status::CapExceeded,
            _ => Status::InputError,
        };
        Failure { status, message: e.to_string() }
    }
}

pub type CmdResult = Result<Status, Failure>;

/// Everything needed to replay a run. Seed and modulus are always present.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub subcommand: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_tries: Option<usize>,
    pub field_modulus: u64,
    pub seed: u64,
    pub node_budget: Option<u64>,
    pub time_budget_seconds: Option<f64>,
}

impl RunConfig {
    pub fn new(subcommand: &'static str) -> Self {
        RunConfig {
            subcommand,
            target: None,
            input: None,
            output: None,
            variant: None,
            n: None,
            t: None,
            d: None,
            a: None,
            b: None,
            parts: None,
            mode: None,
            max_tries: None,
            field_modulus: setpair_core::exterior::DEFAULT_PRIME,
            seed: 0,
            node_budget: None,
            time_budget_seconds: None,
        }
    }
}

/// Calls `visit(line_number, system)` for each non-blank line, stopping at
/// the first unparseable one.
pub fn for_each_system(path: &str, mut visit: impl FnMut(usize, AnySystem) -> Result<(), Failure>) -> Result<(), Failure> {
    let file = File::open(path).map_err(|e| Failure::input(format!("{path}: {e}")))?;
    for (k, line) in BufReader::new(file).lines().enumerate() {
        let number = k + 1;
        let line = line.map_err(|e| Failure::input(format!("{path}: line {number}: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        let system = parse_system(&line).map_err(|e| Failure::input(format!("{path}: line {number}: {e}")))?;
        visit(number, system)?;
    }
    Ok(())
}

/// The JSON document written by `--output`.
pub fn report(config: &RunConfig, body_key: &str, body: Value, elapsed: Duration) -> Value {
    json!({
        "config": config,
        body_key: body,
        "timing": { "wall_seconds": elapsed.as_secs_f64() },
    })
}

pub fn write_file(path: &str, text: &str) -> Result<(), Failure> {
    let mut file = File::create(path).map_err(|e| Failure::input(format!("{path}: {e}")))?;
    file.write_all(text.as_bytes())
        .and_then(|_| file.write_all(b"\n"))
        .map_err(|e| Failure::input(format!("{path}: {e}")))
}

pub fn write_report(path: Option<&str>, value: &Value) -> Result<(), Failure> {
    match path {
        Some(p) => write_file(p, &serde_json::to_string_pretty(value).expect("reports serialize")),
        None => Ok(()),
    }
}
