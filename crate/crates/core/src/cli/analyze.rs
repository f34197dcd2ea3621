use serde::Serialize;

use super::{
    error_value, load_instances, map_ordered, open_output, write_records, ExperimentConfig, Gates, UsageError,
};
use super::{EXIT_FALSIFIED, EXIT_PASS, EXIT_USAGE};
use crate::bounds::{self, BoundInputs, BoundReport};
use crate::graph::degeneracy_coloring;
use crate::graph::{graph6, Graph};
use crate::oracles::{self, chromatic_number_with_budget};
use crate::profile::ConstantsProfile;
use crate::rational_serde;
use crate::Rational;

#[derive(Serialize, Default)]
struct Record {
    source: String,
    graph6: String,
    n: usize,
    e: usize,
    #[serde(with = "rational_serde::option")]
    density: Option<Rational>,
    min_degree: usize,
    max_degree: usize,
    kappa: Option<usize>,
    degeneracy: usize,
    chi: Option<usize>,
    alpha: Option<usize>,
    omega: Option<usize>,
    #[serde(with = "rational_serde::option")]
    rho: Option<Rational>,
    h: Option<usize>,
    duchet_meyniel: Option<BoundReport>,
    bipartite_minor: Option<BoundReport>,
    bounds: Vec<BoundReport>,
    skipped: Vec<String>,
    errors: Vec<String>,
}

impl Record {
    fn falsified(&self) -> bool {
        self.duchet_meyniel.as_ref().and_then(|r| r.satisfied) == Some(false)
    }
}

pub(super) fn run(cfg: &ExperimentConfig) -> Result<i32, UsageError> {
    let profile = cfg.resolve_profile()?;
    let instances = load_instances(cfg)?;
    if cfg.inputs.is_empty() && cfg.generate.is_none() {
        return Err(UsageError("give --input or --generate".into()));
    }
    let records = map_ordered(cfg.jobs, &instances, |inst| match &inst.graph {
        Ok(g) => {
            let r = analyze(&inst.source, g, &cfg.gates, &profile);
            let bad = r.falsified();
            (serde_json::to_value(r).expect("serializable"), Some(bad))
        }
        Err(e) => (error_value(&inst.source, e), None),
    });
    let mut out = open_output(cfg.out.as_deref())?;
    let values: Vec<&serde_json::Value> = records.iter().map(|(v, _)| v).collect();
    write_records(&mut *out, &values)?;
    let read = records.iter().filter(|(_, s)| s.is_some()).count();
    if !instances.is_empty() && read == 0 {
        return Ok(EXIT_USAGE);
    }
    Ok(if records.iter().any(|(_, s)| *s == Some(true)) { EXIT_FALSIFIED } else { EXIT_PASS })
}

fn analyze(source: &str, g: &Graph, gates: &Gates, profile: &ConstantsProfile) -> Record {
    let n = g.vertex_count();
    let deg = degeneracy_coloring(g);
    let mut r = Record {
        source: source.to_string(),
        graph6: graph6::encode(g),
        n,
        e: g.edge_count(),
        density: g.density().ok(),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        degeneracy: deg.degeneracy,
        ..Record::default()
    };
    let mut gate = |name: &str, limit: usize| {
        let ok = n <= limit;
        if !ok {
            r.skipped.push(name.to_string());
        }
        ok
    };
    let (do_kappa, do_chi, do_alpha, do_hall, do_h) = (
        gate("kappa", gates.connectivity),
        gate("chi", gates.chromatic),
        gate("alpha", gates.independence),
        gate("rho", gates.hall),
        gate("h", gates.hadwiger),
    );
    if do_kappa && n > 0 {
        r.kappa = Some(oracles::vertex_connectivity(g).kappa);
    }
    if do_chi {
        match chromatic_number_with_budget(g, gates.budget) {
            Ok(c) => r.chi = Some(c.chi),
            Err((e, lo, hi)) => r.errors.push(format!("chi: {e} (between {lo} and {hi})")),
        }
    }
    if do_alpha {
        match (oracles::independence_number(g), oracles::clique_number(g)) {
            (Ok(a), Ok(w)) => {
                r.alpha = Some(a.size);
                r.omega = Some(w);
            }
            (a, w) => r.errors.extend(a.err().into_iter().chain(w.err()).map(|e| format!("alpha: {e}"))),
        }
    }
    if do_hall && n > 0 {
        match oracles::hall_ratio(g) {
            Ok(h) => r.rho = Some(h.rho),
            Err(e) => r.errors.push(format!("rho: {e}")),
        }
    }
    if do_h {
        match oracles::hadwiger_number(g) {
            Ok(h) => r.h = Some(h.h),
            Err(e) => r.errors.push(format!("h: {e}")),
        }
    }
    if do_hall && do_h && n > 0 {
        match bounds::check_duchet_meyniel(g, profile) {
            Ok(rep) => r.duchet_meyniel = Some(rep),
            Err(e) => r.errors.push(format!("duchet_meyniel: {e}")),
        }
    }
    if do_h && g.edge_count() > 0 && g.is_bipartite_within(&g.vertices().collect::<Vec<_>>()) {
        let (a, b) = two_sides(g);
        match bounds::check_bipartite_minor_bound(g, &a, &b, Rational::from_integer(1), profile) {
            Ok(rep) => r.bipartite_minor = Some(rep),
            Err(e) => r.errors.push(format!("bipartite_minor: {e}")),
        }
    }
    if let Some(h) = r.h.filter(|&h| h >= 2) {
        let inputs = BoundInputs {
            t: Some(h as u64 + 1),
            r: r.omega.map(|w| w as u64 + 1),
            delta: Some(r.max_degree as u64),
            omega: r.omega.map(|w| w as u64),
            chi: r.chi.map(|c| c as u64),
            ..BoundInputs::default()
        };
        match bounds::evaluate_bounds(&inputs, profile) {
            Ok(reps) => r.bounds = reps,
            Err(e) => r.errors.push(format!("bounds: {e}")),
        }
    }
    r
}

/// Colour classes of a proper 2-colouring (lowest vertex of each component
/// on the first side).
fn two_sides(g: &Graph) -> (Vec<usize>, Vec<usize>) {
    let n = g.vertex_count();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    stack.push(w);
                }
            }
        }
    }
    let a = (0..n).filter(|&v| side[v] == 0).collect();
    let b = (0..n).filter(|&v| side[v] == 1).collect();
    (a, b)
}
