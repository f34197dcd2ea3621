//! Property suites. Each writes one row per instance and a closing summary
//! row; a failing row carries the instance as graph6 plus a certificate or
//! witness for the failure. With `--out`, rows are also written as CSV next
//! to the JSON-lines file.

use std::collections::BTreeMap;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::{load_instances, map_ordered, open_output, write_records, ExperimentConfig, Instance, UsageError};
use super::{EXIT_FALSIFIED, EXIT_PASS};
use crate::bounds::{check_duchet_meyniel, hall_ratio_coloring};
use crate::catalog;
use crate::certificate::{Certificate, Payload};
use crate::extract::{
    mader_connected_subgraph, satisfies_special_clauses, small_dense_subgraph, special_instance, special_subset,
    ExtractionOutcome,
};
use crate::graph::generate::Family;
use crate::graph::{graph6, Graph, Vertex};
use crate::linkage::instances::{redundant_instance, steiner_instance};
use crate::linkage::{menger, redundant_menger_paths, steiner_skeleton};
use crate::oracles::hadwiger_number;
use crate::profile::ConstantsProfile;
use crate::verify::{check_extraction_trace, is_k_connected};
use crate::Rational;

pub const SUITES: &[&str] =
    &["duchet_meyniel", "small_bound", "special_subset", "menger_variant", "menger", "steiner", "mader", "extraction"];

#[derive(Serialize, Default)]
struct Row {
    suite: &'static str,
    index: usize,
    source: String,
    n: usize,
    pass: bool,
    /// The tracked ratio for this suite; the summary reports its maximum.
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
    metrics: BTreeMap<&'static str, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph6: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Value>,
}

impl Row {
    fn new(suite: &'static str, index: usize, source: String, g: &Graph) -> Self {
        Self { suite, index, source, n: g.vertex_count(), pass: true, ..Self::default() }
    }

    fn metric(&mut self, key: &'static str, v: impl Serialize) {
        self.metrics.insert(key, serde_json::to_value(v).expect("serializable"));
    }

    fn fail(&mut self, g: &Graph, why: String) {
        self.pass = false;
        self.failure = Some(why);
        self.graph6 = Some(graph6::encode(g));
    }
}

#[derive(Serialize)]
struct Summary {
    suite: String,
    instances: usize,
    passed: usize,
    failed: usize,
    ratio: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_ratio_source: Option<String>,
    errors: usize,
    falsifiers: Vec<usize>,
}

struct Ctx<'a> {
    cfg: &'a ExperimentConfig,
    profile: ConstantsProfile,
}

fn ratio_name(suite: &str) -> &'static str {
    match suite {
        "duchet_meyniel" => "rho/(2h)",
        "small_bound" => "colors/ceil((2+ln(v/rho))rho)",
        "mader" => "kappa/ceil(d/2)",
        "steiner" => "|S'|/(3|S|)",
        _ => "",
    }
}

pub(super) fn run(cfg: &ExperimentConfig) -> Result<i32, UsageError> {
    let suite = cfg.suite.as_deref().unwrap_or_default();
    let Some(&suite) = SUITES.iter().find(|s| **s == suite) else {
        return Err(UsageError(format!("unknown suite `{suite}`; available suites: {}", SUITES.join(", "))));
    };
    let ctx = Ctx { cfg, profile: cfg.resolve_profile()? };
    let rows = match suite {
        "duchet_meyniel" => duchet_meyniel(&ctx)?,
        "small_bound" => small_bound(&ctx)?,
        "special_subset" => special(&ctx),
        "menger_variant" => menger_variant(&ctx),
        "menger" => menger_duality(&ctx),
        "steiner" => steiner(&ctx),
        "mader" => mader(&ctx)?,
        "extraction" => extraction(&ctx)?,
        _ => unreachable!(),
    };
    let mut summary = Summary {
        suite: suite.to_string(),
        instances: rows.len(),
        passed: rows.iter().filter(|r| r.pass).count(),
        failed: rows.iter().filter(|r| !r.pass).count(),
        ratio: ratio_name(suite),
        max_ratio: None,
        max_ratio_source: None,
        errors: rows.iter().filter(|r| r.metrics.contains_key("error")).count(),
        falsifiers: rows.iter().filter(|r| !r.pass).map(|r| r.index).collect(),
    };
    for r in &rows {
        if let Some(x) = r.ratio {
            if summary.max_ratio.map_or(true, |m| x > m) {
                summary.max_ratio = Some(x);
                summary.max_ratio_source = Some(r.source.clone());
            }
        }
    }
    let mut out = open_output(cfg.out.as_deref())?;
    write_records(&mut *out, &rows)?;
    write_records(&mut *out, &[json!({ "summary": summary })])?;
    if let Some(path) = &cfg.out {
        write_csv(&path.with_extension("csv"), &rows)?;
    }
    Ok(if summary.failed > 0 { EXIT_FALSIFIED } else { EXIT_PASS })
}

fn write_csv(path: &std::path::Path, rows: &[Row]) -> Result<(), UsageError> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "suite,index,source,n,pass,ratio,failure")?;
    for r in rows {
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        writeln!(
            f,
            "{},{},{},{},{},{},{}",
            r.suite,
            r.index,
            quote(&r.source),
            r.n,
            r.pass,
            r.ratio.map(|x| x.to_string()).unwrap_or_default(),
            quote(r.failure.as_deref().unwrap_or(""))
        )?;
    }
    f.flush()?;
    Ok(())
}

/// Explicit inputs when given, otherwise the catalog up to `max_n`.
fn corpus(
    ctx: &Ctx,
    default_max: usize,
    limit: usize,
    build: fn(usize) -> Vec<catalog::CatalogEntry>,
) -> Result<Vec<Instance>, UsageError> {
    if !ctx.cfg.inputs.is_empty() || ctx.cfg.generate.is_some() {
        return load_instances(ctx.cfg);
    }
    let max = ctx.cfg.max_n.unwrap_or(default_max);
    if max > limit {
        return Err(UsageError(format!("--max-n {max} exceeds {limit} for this suite")));
    }
    Ok(build(max).into_iter().map(|e| Instance { source: e.name, graph: Ok(e.graph) }).collect())
}

fn per_instance(ctx: &Ctx, suite: &'static str, items: &[Instance], f: impl Fn(&Graph, &mut Row) + Sync) -> Vec<Row> {
    let indexed: Vec<(usize, &Instance)> = items.iter().enumerate().collect();
    map_ordered(ctx.cfg.jobs, &indexed, |&(i, inst)| match &inst.graph {
        Ok(g) => {
            let mut row = Row::new(suite, i, inst.source.clone(), g);
            f(g, &mut row);
            row
        }
        Err(e) => Row {
            suite,
            index: i,
            source: inst.source.clone(),
            pass: false,
            failure: Some(format!("unreadable: {e}")),
            ..Row::default()
        },
    })
}

fn per_seed(ctx: &Ctx, suite: &'static str, f: impl Fn(u64) -> Row + Sync) -> Vec<Row> {
    let seeds: Vec<(usize, u64)> = (0..ctx.cfg.count).map(|i| (i, ctx.cfg.seed.wrapping_add(i as u64))).collect();
    map_ordered(ctx.cfg.jobs, &seeds, |&(i, seed)| {
        let mut row = f(seed);
        row.suite = suite;
        row.index = i;
        row
    })
}

fn duchet_meyniel(ctx: &Ctx) -> Result<Vec<Row>, UsageError> {
    let items = corpus(ctx, 7, catalog::EXHAUSTIVE_LIMIT, catalog::exhaustive)?;
    Ok(per_instance(ctx, "duchet_meyniel", &items, |g, row| {
        if g.vertex_count() == 0 {
            return;
        }
        match check_duchet_meyniel(g, &ctx.profile) {
            Ok(rep) => {
                let rho = crate::rational_serde::parse(&rep.inputs["rho"]).expect("rational");
                let h: i64 = rep.inputs["h"].parse().expect("integer");
                let ratio = rho / Rational::from_integer(2 * h.max(1));
                row.ratio = Some(*ratio.numer() as f64 / *ratio.denom() as f64);
                row.metric("rho", rho.to_string());
                row.metric("h", h);
                if rep.satisfied == Some(false) {
                    row.fail(g, format!("rho = {rho} exceeds 2h = {}", 2 * h));
                    if let Ok(had) = hadwiger_number(g) {
                        row.certificate = Some(Certificate::new(g, Payload::MinorModel { model: had.model }, true));
                    }
                }
            }
            Err(e) => {
                row.metric("error", e.to_string());
                row.fail(g, e.to_string());
            }
        }
    }))
}

fn small_bound(ctx: &Ctx) -> Result<Vec<Row>, UsageError> {
    let mut items = corpus(ctx, 10, 16, catalog::standard)?;
    if ctx.cfg.inputs.is_empty() && ctx.cfg.generate.is_none() {
        let max = ctx.cfg.max_n.unwrap_or(10).max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
        for i in 0..ctx.cfg.count {
            let n = rng.gen_range(1..=max);
            let p = [0.2, 0.5, 0.8][i % 3];
            let seed = rng.gen();
            let graph = Family::Gnp { n, p }.generate(seed).map_err(|e| e.to_string());
            items.push(Instance { source: format!("gnp:{n}:{p}#{seed}"), graph });
        }
    }
    Ok(per_instance(ctx, "small_bound", &items, |g, row| {
        if g.vertex_count() == 0 {
            return;
        }
        match hall_ratio_coloring(g, None) {
            Ok(c) => {
                let used = c.color_count();
                let ceiling = small_bound_ceiling(g.vertex_count(), c.rho);
                row.ratio = Some(used as f64 / ceiling as f64);
                row.metric("rho", c.rho.to_string());
                row.metric("colors", used);
                row.metric("bound", ceiling);
                let proper = crate::verify::check_coloring(g, &c.colors).is_ok();
                if !proper || used as u64 > ceiling {
                    row.fail(g, format!("{used} colors against the bound {ceiling} (proper: {proper})"));
                    row.certificate =
                        Some(Certificate::new(g, Payload::Coloring { colors: c.colors, claimed: Some(used) }, true));
                }
            }
            Err(e) => {
                row.metric("error", e.to_string());
                row.fail(g, e.to_string());
            }
        }
    }))
}

/// `⌈(2 + ln(v/ρ))·ρ⌉`, exact when `v = ρ` and otherwise rounded up after
/// a relative nudge.
pub(crate) fn small_bound_ceiling(v: usize, rho: Rational) -> u64 {
    let ratio = Rational::from_integer(v as i64) / rho;
    if ratio == Rational::from_integer(1) {
        return (rho * 2).ceil().to_integer() as u64;
    }
    let r = *rho.numer() as f64 / *rho.denom() as f64;
    crate::bounds::ceil_outward((2.0 + (v as f64 / r).ln()) * r)
}

fn special(ctx: &Ctx) -> Vec<Row> {
    let max = ctx.cfg.max_n.unwrap_or(100).max(12);
    per_seed(ctx, "special_subset", |seed| {
        let inst = special_instance(seed, max);
        let g = &inst.graph;
        let mut row = Row::new("special_subset", 0, format!("special#{seed}"), g);
        row.metric("set", inst.set.len());
        row.metric("r", inst.r.to_string());
        row.metric("delta", inst.delta.to_string());
        match special_subset(g, &inst.set, inst.r, inst.delta) {
            Ok(out) => {
                row.metric("subset", out.subset.len());
                let inside = out.subset.iter().all(|v| inst.set.contains(v));
                if out.subset.is_empty() || !inside || !satisfies_special_clauses(g, &out.subset, inst.r, inst.delta) {
                    row.fail(g, "output empty or violates a clause".into());
                    row.witness = Some(json!({ "set": inst.set, "r": inst.r.to_string(),
                        "delta": inst.delta.to_string(), "subset": out.subset }));
                }
            }
            Err(e) => {
                row.fail(g, e.to_string());
                row.witness =
                    Some(json!({ "set": inst.set, "r": inst.r.to_string(), "delta": inst.delta.to_string() }));
            }
        }
        row
    })
}

fn menger_variant(ctx: &Ctx) -> Vec<Row> {
    let max = ctx.cfg.max_n.unwrap_or(60).max(16);
    per_seed(ctx, "menger_variant", |seed| {
        let i = redundant_instance(seed, max, if seed % 2 == 0 { 0.0 } else { 0.04 });
        let g = &i.graph;
        let mut row = Row::new("menger_variant", 0, format!("redundant#{seed}"), g);
        let need = i.a1.len() + i.a2.len();
        row.metric("need", need);
        match redundant_menger_paths(g, &i.a1, &i.a2, &i.b, &i.p1, &i.p2) {
            Ok(r) if r.linkage.paths.len() >= need => row.metric("paths", r.linkage.paths.len()),
            Ok(r) => {
                row.fail(g, format!("{} paths, need {need}", r.linkage.paths.len()));
                row.certificate = Some(Certificate::new(g, Payload::PathSystem { linkage: r.linkage }, true));
            }
            Err(e) => {
                row.fail(g, e.to_string());
                row.witness = Some(json!({ "a1": i.a1, "a2": i.a2, "b": i.b, "p1": i.p1, "p2": i.p2 }));
            }
        }
        row
    })
}

/// Random `(G, A, B)` from a seed: `G(n, p)` with `n ≤ max_n` and random
/// non-empty `A`, `B` (possibly overlapping).
pub(crate) fn menger_instance(seed: u64, max_n: usize) -> (Graph, Vec<Vertex>, Vec<Vertex>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n.max(2));
    let p = rng.gen_range(0.05..0.5);
    let g = Family::Gnp { n, p }.generate(rng.gen()).expect("valid probability");
    let pick = |rng: &mut ChaCha8Rng| {
        let mut vs: Vec<Vertex> = (0..n).collect();
        vs.shuffle(rng);
        vs.truncate(rng.gen_range(1..=n.min(6)));
        vs.sort_unstable();
        vs
    };
    let a = pick(&mut rng);
    let b = pick(&mut rng);
    (g, a, b)
}

fn menger_duality(ctx: &Ctx) -> Vec<Row> {
    let max = ctx.cfg.max_n.unwrap_or(30);
    per_seed(ctx, "menger", |seed| {
        let (g, a, b) = menger_instance(seed, max);
        let mut row = Row::new("menger", 0, format!("menger#{seed}"), &g);
        match menger(&g, &a, &b) {
            Ok(m) if m.paths.len() == m.separator.len() => row.metric("value", m.value),
            Ok(m) => {
                row.fail(&g, format!("{} paths against a separator of {}", m.paths.len(), m.separator.len()));
                row.witness = Some(json!({ "a": a, "b": b, "separator": m.separator }));
            }
            Err(e) => {
                row.fail(&g, e.to_string());
                row.witness = Some(json!({ "a": a, "b": b }));
            }
        }
        row
    })
}

fn steiner(ctx: &Ctx) -> Vec<Row> {
    let max = ctx.cfg.max_n.unwrap_or(200).max(2);
    per_seed(ctx, "steiner", |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=max);
        let p = rng.gen_range(0.5..3.0) / n as f64;
        let k = rng.gen_range(1..=10);
        let (g, terminals) = steiner_instance(n, p, k, rng.gen());
        let mut row = Row::new("steiner", 0, format!("steiner#{seed}"), &g);
        match steiner_skeleton(&g, &terminals) {
            Ok(s) => {
                let mut distinct = terminals.clone();
                distinct.sort_unstable();
                distinct.dedup();
                row.ratio = Some(s.special.len() as f64 / (3 * distinct.len()) as f64);
                row.metric("vertices", s.vertices.len());
                row.metric("special", s.special.len());
                let bad = s.violations(&g, &terminals);
                if !bad.is_empty() {
                    row.fail(&g, bad.join("; "));
                    row.witness = Some(json!({ "terminals": terminals, "skeleton": s }));
                }
            }
            Err(e) => {
                row.fail(&g, e.to_string());
                row.witness = Some(json!({ "terminals": terminals }));
            }
        }
        row
    })
}

fn mader(ctx: &Ctx) -> Result<Vec<Row>, UsageError> {
    let items = corpus(ctx, 10, 16, catalog::standard)?;
    Ok(per_instance(ctx, "mader", &items, |g, row| {
        if g.edge_count() == 0 {
            return;
        }
        match mader_connected_subgraph(g) {
            Ok(m) => {
                let sub = g.induced(&m.piece.vertices).expect("in range");
                row.metric("target", m.target);
                row.metric("kappa", m.piece.kappa);
                row.ratio = Some(m.piece.kappa as f64 / m.target.max(1) as f64);
                if !is_k_connected(&sub.graph, m.target) {
                    row.fail(g, format!("piece is not {}-connected", m.target));
                    row.certificate = Some(Certificate::new(
                        g,
                        Payload::Connectivity { vertices: m.piece.vertices, k: m.target },
                        true,
                    ));
                }
            }
            Err(e) => row.fail(g, e.to_string()),
        }
    }))
}

fn extraction(ctx: &Ctx) -> Result<Vec<Row>, UsageError> {
    ctx.profile.global_c().map_err(|e| UsageError(format!("{e}; the extraction suite needs a numeric profile")))?;
    let max = ctx.cfg.max_n.unwrap_or(120).max(60);
    let (t, k) = (ctx.cfg.t.unwrap_or(3), ctx.cfg.k.unwrap_or(4));
    Ok(per_seed(ctx, "extraction", |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(60..=max);
        let family = Family::PlantedDense { n, pocket_size: 20, pocket_p: 0.95, ambient_p: 0.05 };
        let g = family.generate(rng.gen()).expect("valid parameters");
        let mut row = Row::new("extraction", 0, format!("{family}#{seed}"), &g);
        match small_dense_subgraph(&g, t, k, &ctx.profile) {
            Ok(rep) => {
                row.metric("outcome", rep.outcome.name());
                let mut problems = check_extraction_trace(&g, &rep);
                match &rep.outcome {
                    ExtractionOutcome::MinorFound { model } => {
                        row.certificate = Some(Certificate::new(&g, Payload::MinorModel { model: model.clone() }, true))
                    }
                    ExtractionOutcome::DenseSubgraph { piece } => {
                        row.metric("size", piece.vertices.len());
                        let sub = g.induced(&piece.vertices).expect("in range");
                        if !is_k_connected(&sub.graph, k) {
                            problems.push(format!("subgraph is not {k}-connected"));
                        }
                        if piece.vertices.len() > rep.trace.size_cap {
                            problems.push(format!("subgraph exceeds the cap {}", rep.trace.size_cap));
                        }
                        row.certificate = Some(Certificate::new(
                            &g,
                            Payload::Connectivity { vertices: piece.vertices.clone(), k },
                            true,
                        ));
                    }
                    ExtractionOutcome::Exhausted => problems.push("process ended without an outcome".into()),
                }
                if !problems.is_empty() {
                    row.fail(&g, problems.join("; "));
                } else {
                    row.certificate = None;
                }
            }
            Err(e) => row.fail(&g, e.to_string()),
        }
        row
    }))
}
