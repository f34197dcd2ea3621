use serde::Serialize;

use super::{error_value, load_instances, map_ordered, open_output, write_records, ExperimentConfig, UsageError};
use super::{EXIT_FALSIFIED, EXIT_PASS, EXIT_USAGE};
use crate::certificate::{Certificate, Payload, Verdict};
use crate::extract::{
    extract_disjoint_connected_subgraphs, high_chromatic_connected_subgraph, mader_connected_subgraph,
    small_dense_subgraph, ConnectError, ConnectedPiece, ExtractionError, ExtractionOutcome,
};
use crate::graph::{graph6, Graph};
use crate::oracles::{find_complete_minor, MinorSearch};
use crate::profile::ConstantsProfile;
use crate::verify::check_extraction_trace;

const MODES: [&str; 5] = ["dense", "minor", "mader", "disjoint", "chromatic"];

#[derive(Serialize)]
struct Record {
    source: String,
    graph6: String,
    mode: String,
    /// `ok`, `rejected` (hypotheses not met) or `error`.
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    outcome: Option<String>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    report: serde_json::Value,
    certificates: Vec<Certificate>,
    /// Present under `--verify`: every problem found on re-checking.
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<Vec<String>>,
}

struct Params<'a> {
    mode: &'a str,
    t: usize,
    k: usize,
    r: usize,
    cap: usize,
    budget: u64,
    chromatic_gate: usize,
    verify: bool,
    profile: &'a ConstantsProfile,
}

pub(super) fn run(cfg: &ExperimentConfig) -> Result<i32, UsageError> {
    let mode = cfg.mode.as_deref().unwrap_or("dense");
    if !MODES.contains(&mode) {
        return Err(UsageError(format!("unknown mode `{mode}` (expected one of {})", MODES.join(", "))));
    }
    if cfg.inputs.is_empty() && cfg.generate.is_none() {
        return Err(UsageError("give --input or --generate".into()));
    }
    let profile = cfg.resolve_profile()?;
    if mode == "dense" {
        profile.global_c().map_err(|e| UsageError(format!("{e}; use a desk profile or --set global_c=<value>")))?;
    }
    let params = Params {
        mode,
        t: cfg.t.unwrap_or(3),
        k: cfg.k.unwrap_or(4),
        r: cfg.r.unwrap_or(3),
        cap: cfg.cap.unwrap_or(60),
        budget: cfg.gates.budget,
        chromatic_gate: cfg.gates.chromatic,
        verify: cfg.verify,
        profile: &profile,
    };
    let instances = load_instances(cfg)?;
    let records = map_ordered(cfg.jobs, &instances, |inst| match &inst.graph {
        Ok(g) => {
            let r = extract(&inst.source, g, &params);
            let bad = r.verification.as_ref().is_some_and(|v| !v.is_empty());
            (serde_json::to_value(r).expect("serializable"), Some(bad))
        }
        Err(e) => (error_value(&inst.source, e), None),
    });
    let mut out = open_output(cfg.out.as_deref())?;
    let values: Vec<&serde_json::Value> = records.iter().map(|(v, _)| v).collect();
    write_records(&mut *out, &values)?;
    if !instances.is_empty() && records.iter().all(|(_, s)| s.is_none()) {
        return Ok(EXIT_USAGE);
    }
    Ok(if records.iter().any(|(_, s)| *s == Some(true)) { EXIT_FALSIFIED } else { EXIT_PASS })
}

fn connectivity(g: &Graph, piece: &ConnectedPiece, k: usize) -> Certificate {
    Certificate::new(g, Payload::Connectivity { vertices: piece.vertices.clone(), k }, false)
}

fn extract(source: &str, g: &Graph, p: &Params) -> Record {
    let mut rec = Record {
        source: source.to_string(),
        graph6: graph6::encode(g),
        mode: p.mode.to_string(),
        status: "ok",
        reason: None,
        outcome: None,
        report: serde_json::Value::Null,
        certificates: Vec::new(),
        verification: None,
    };
    let mut extra_problems = Vec::new();
    let reject = |rec: &mut Record, status, reason: String| {
        rec.status = status;
        rec.reason = Some(reason);
    };
    match p.mode {
        "dense" => match small_dense_subgraph(g, p.t, p.k, p.profile) {
            Ok(report) => {
                rec.outcome = Some(report.outcome.name().into());
                match &report.outcome {
                    ExtractionOutcome::MinorFound { model } => {
                        rec.certificates.push(Certificate::new(g, Payload::MinorModel { model: model.clone() }, false))
                    }
                    ExtractionOutcome::DenseSubgraph { piece } => rec.certificates.push(connectivity(g, piece, p.k)),
                    ExtractionOutcome::Exhausted => {}
                }
                if p.verify {
                    extra_problems = check_extraction_trace(g, &report);
                    if let ExtractionOutcome::DenseSubgraph { piece } = &report.outcome {
                        if piece.vertices.len() > report.trace.size_cap {
                            extra_problems.push(format!(
                                "subgraph has {} vertices, above the cap {}",
                                piece.vertices.len(),
                                report.trace.size_cap
                            ));
                        }
                    }
                }
                rec.report = serde_json::to_value(&report).expect("serializable");
            }
            Err(e @ (ExtractionError::DensityTooLow { .. } | ExtractionError::EmptyGraph)) => {
                reject(&mut rec, "rejected", e.to_string())
            }
            Err(e) => reject(&mut rec, "error", e.to_string()),
        },
        "minor" => match find_complete_minor(g, p.t, p.budget) {
            MinorSearch::Found { model } => {
                rec.outcome = Some("minor_found".into());
                rec.certificates.push(Certificate::new(g, Payload::MinorModel { model }, false));
            }
            MinorSearch::Absent => rec.outcome = Some("absent".into()),
            MinorSearch::Unknown => rec.outcome = Some("budget_exhausted".into()),
        },
        "mader" => match mader_connected_subgraph(g) {
            Ok(m) => {
                rec.outcome = Some("connected_subgraph".into());
                rec.certificates.push(connectivity(g, &m.piece, m.target));
                rec.report = serde_json::to_value(&m).expect("serializable");
            }
            Err(ConnectError::EmptyGraph) => reject(&mut rec, "rejected", "graph is empty".into()),
            Err(e) => reject(&mut rec, "error", e.to_string()),
        },
        "disjoint" => {
            let d = extract_disjoint_connected_subgraphs(g, p.k, p.r, p.cap, p.profile);
            rec.outcome = Some(format!("{}_pieces", d.pieces.len()));
            rec.certificates.extend(d.pieces.iter().map(|piece| connectivity(g, piece, p.k)));
            if p.verify {
                let mut seen = vec![false; g.vertex_count()];
                for v in d.pieces.iter().flat_map(|piece| &piece.vertices) {
                    if std::mem::replace(&mut seen[*v], true) {
                        extra_problems.push(format!("vertex {v} lies in two pieces"));
                    }
                }
                for (i, piece) in d.pieces.iter().enumerate() {
                    if piece.vertices.len() > p.cap {
                        extra_problems.push(format!("piece {i} exceeds the cap {}", p.cap));
                    }
                }
            }
            rec.report = serde_json::to_value(&d).expect("serializable");
        }
        "chromatic" => {
            if g.vertex_count() > p.chromatic_gate {
                reject(&mut rec, "rejected", format!("n = {} exceeds the chromatic gate", g.vertex_count()));
            } else {
                match high_chromatic_connected_subgraph(g, p.k, p.profile.largechi_need, p.profile.largechi_loss) {
                    Ok(h) => {
                        rec.outcome = Some("connected_subgraph".into());
                        rec.certificates.push(connectivity(g, &h.piece, p.k));
                        if p.verify && !h.guarantee_met {
                            extra_problems.push(format!(
                                "chi(H) = {} is below chi(G) - {}k = {}",
                                h.chi_piece,
                                p.profile.largechi_loss,
                                h.chi_host as i64 - (p.profile.largechi_loss as usize * p.k) as i64
                            ));
                        }
                        rec.report = serde_json::to_value(&h).expect("serializable");
                    }
                    Err(e @ (ConnectError::ChromaticTooSmall { .. } | ConnectError::EmptyGraph)) => {
                        reject(&mut rec, "rejected", e.to_string())
                    }
                    Err(e) => reject(&mut rec, "error", e.to_string()),
                }
            }
        }
        _ => unreachable!("mode checked in run"),
    }
    if p.verify {
        let mut problems = extra_problems;
        for (i, cert) in rec.certificates.iter().enumerate() {
            match cert.verify(Some(g)) {
                Verdict::Valid => {}
                Verdict::Invalid { reasons } => {
                    problems.extend(reasons.into_iter().map(|r| format!("certificate {i}: {r}")))
                }
                Verdict::WrongHost { .. } => problems.push(format!("certificate {i}: wrong host")),
            }
        }
        rec.verification = Some(problems);
    }
    rec
}
