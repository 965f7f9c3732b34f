use std::collections::hash_map::RandomState;
use std::hash::{BuildHasher, Hasher};
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_OTHER: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_FALSIFIED: u8 = 4;

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// Top-level JSON document. Field order is part of the format.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub timing: Timing,
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub error: ErrorBody,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    pub exit_code: u8,
}

pub fn exit_code_for(e: &cwsdiag::Error) -> u8 {
    match e {
        cwsdiag::Error::Parse(_) => EXIT_PARSE,
        cwsdiag::Error::Budget(_) => EXIT_BUDGET,
        _ => EXIT_OTHER,
    }
}

/// Parse `--seed`: a number, or `random` for a fresh one.
pub fn parse_seed(s: &str) -> Result<u64, String> {
    if s == "random" {
        let mut h = RandomState::new().build_hasher();
        h.write_u64(std::process::id() as u64);
        Ok(h.finish())
    } else {
        s.parse().map_err(|_| format!("expected an integer or `random`, got `{s}`"))
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or_else(|e| json!({ "serialization_error": e.to_string() }))
}

pub fn emit<T: Serialize>(doc: &T, out: Option<&Path>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(doc).expect("report serializes");
    match out {
        Some(p) => std::fs::write(p, text + "\n"),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}")
        }
    }
}
