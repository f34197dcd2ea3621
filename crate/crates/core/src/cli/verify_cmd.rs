//! Re-checks certificates. A file holds one JSON document or JSON lines;
//! each document is a bare certificate, a record with a `certificate` or
//! `certificates` field, or a record without any (skipped). A record's own
//! `graph6` field serves as the host for certificates that embed none.

use serde::Serialize;
use serde_json::Value;

use super::{open_output, write_records, ExperimentConfig, UsageError};
use super::{EXIT_FALSIFIED, EXIT_PASS, EXIT_USAGE};
use crate::certificate::{Certificate, Verdict};
use crate::graph::{graph6, Graph};

#[derive(Serialize)]
struct Record {
    source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<&'static str>,
    #[serde(flatten)]
    verdict: Outcome,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Outcome {
    Checked(Verdict),
    Error { verdict: &'static str, error: String },
}

impl Outcome {
    fn exit_code(&self) -> i32 {
        match self {
            Outcome::Checked(Verdict::Valid) => EXIT_PASS,
            Outcome::Checked(Verdict::Invalid { .. }) => EXIT_FALSIFIED,
            Outcome::Checked(Verdict::WrongHost { .. }) | Outcome::Error { .. } => EXIT_USAGE,
        }
    }
}

fn error(source: String, e: impl ToString) -> Record {
    Record { source, kind: None, verdict: Outcome::Error { verdict: "error", error: e.to_string() } }
}

pub(super) fn run(cfg: &ExperimentConfig) -> Result<i32, UsageError> {
    if cfg.inputs.is_empty() {
        return Err(UsageError("give at least one certificate file with --input".into()));
    }
    let host = match &cfg.host {
        Some(path) => Some(read_host(path)?),
        None => None,
    };
    let mut records = Vec::new();
    for path in &cfg.inputs {
        let name = path.display().to_string();
        match std::fs::read_to_string(path) {
            Ok(text) => check_file(&name, &text, host.as_ref(), &mut records),
            Err(e) => records.push(error(name, format!("cannot read: {e}"))),
        }
    }
    let mut out = open_output(cfg.out.as_deref())?;
    write_records(&mut *out, &records)?;
    if records.is_empty() {
        eprintln!("warning: no certificates found");
    }
    Ok(records.iter().map(|r| r.verdict.exit_code()).max().unwrap_or(EXIT_PASS))
}

fn read_host(path: &std::path::Path) -> Result<Graph, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| UsageError(format!("{}: no graph", path.display())))?;
    graph6::decode_str(line).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn check_file(name: &str, text: &str, host: Option<&Graph>, out: &mut Vec<Record>) {
    if let Ok(doc) = serde_json::from_str::<Value>(text) {
        check_document(name.to_string(), doc, host, out);
        return;
    }
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let source = format!("{name}:{}", i + 1);
        match serde_json::from_str::<Value>(line) {
            Ok(doc) => check_document(source, doc, host, out),
            Err(e) => out.push(error(source, e)),
        }
    }
}

fn check_document(source: String, mut doc: Value, host: Option<&Graph>, out: &mut Vec<Record>) {
    let certs: Vec<Value> = if doc.get("kind").is_some() && doc.get("host_hash").is_some() {
        vec![doc.clone()]
    } else if let Some(Value::Array(list)) = doc.get_mut("certificates").map(Value::take) {
        list
    } else if let Some(c) = doc.get_mut("certificate").map(Value::take).filter(|c| !c.is_null()) {
        vec![c]
    } else {
        return;
    };
    let record_host = match doc.get("graph6").and_then(Value::as_str) {
        Some(g6) if host.is_none() => match graph6::decode_str(g6) {
            Ok(g) => Some(g),
            Err(e) => {
                out.push(error(source, format!("record graph6: {e}")));
                return;
            }
        },
        _ => None,
    };
    let many = certs.len() > 1;
    for (i, value) in certs.into_iter().enumerate() {
        let source = if many { format!("{source}#{i}") } else { source.clone() };
        let cert: Certificate = match serde_json::from_value(value) {
            Ok(c) => c,
            Err(e) => {
                out.push(error(source, format!("cannot parse certificate: {e}")));
                continue;
            }
        };
        let target = host.or(if cert.host_graph6.is_none() { record_host.as_ref() } else { None });
        let verdict = cert.verify(target);
        out.push(Record { source, kind: Some(cert.payload.kind()), verdict: Outcome::Checked(verdict) });
    }
}
