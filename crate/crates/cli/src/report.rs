//! Output plumbing: the reproducibility stanza, format selection and the
//! destination writer.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use nlcx_core::Field;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Canonical choices every run depends on.
fn canonical() -> Value {
    json!({
        "modulus": "lexicographically smallest monic irreducible, constant term compared first",
        "primitive": "smallest integer encoding of multiplicative order q-1",
        "element_encoding": "base p, constant coefficient least significant",
        "rng": "chacha20, seed_from_u64(seed), stream = sample index, masked rejection",
        "hermitian_q": "smallest curve point with x != 0; orbits ordered by smallest member",
    })
}

pub fn describe_field(field: &Field) -> String {
    field.to_string()
}

/// `{tool, version, command, parameters, field?, canonical}`.
pub fn stanza(command: &str, parameters: &impl Serialize, field: Option<&Field>) -> Value {
    let mut v = json!({
        "tool": "nlcx",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "parameters": parameters,
        "canonical": canonical(),
    });
    if let Some(f) = field {
        v["field"] = json!(describe_field(f));
    }
    v
}

/// A JSON report: `schema`, the command's payload fields, `reproducibility`.
pub fn json_report(payload: Value, stanza: Value) -> Value {
    let mut out = json!({ "schema": SCHEMA });
    if let Value::Object(map) = payload {
        for (k, v) in map {
            out[k] = v;
        }
    }
    out["reproducibility"] = stanza;
    out
}

/// The stanza as `#` comment lines ahead of CSV or text output.
pub fn comment_lines(stanza: &Value) -> String {
    format!("# schema={SCHEMA} {}\n", serde_json::to_string(stanza).expect("json"))
}

pub fn open(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn emit(path: Option<&Path>, body: &str) -> io::Result<()> {
    let mut w = open(path)?;
    w.write_all(body.as_bytes())?;
    w.flush()
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}
