//! The contraction process that either exposes a complete minor or finds a
//! small highly connected subgraph.
//!
//! Components of `s` host vertices are contracted one at a time while the
//! total edge loss stays within `b` per unit of vertex reduction. When no
//! further component fits, the quotient is split into `X` (contracted
//! vertices), `Y` (many neighbours in `X`), `Z` (high degree) and the rest
//! `S`; `S` is peeled to `S'`, a last component is grown inside `S'`, and
//! its uncontracted neighbourhood `R` is searched for a `k`-connected
//! subgraph.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::connect::{k_connected_subgraph_within, ConnectedPiece};
use super::peel::special_subset;
use crate::graph::{contract, ContractionMap, Graph, Vertex};
use crate::model::MinorModel;
use crate::oracles::{find_complete_minor, MinorSearch};
use crate::profile::{ConstantsProfile, ProfileError};
use crate::Rational;

/// Node budget for the fallback minor search.
pub const MINOR_FALLBACK_BUDGET: u64 = 2_000_000;

#[derive(Debug, Error)]
pub enum ExtractionError {
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("need k >= t >= 1 (got t = {t}, k = {k})")]
    BadParameters { t: usize, k: usize },
    #[error("density {density} is below the required {required} = C*k")]
    DensityTooLow { density: Rational, required: Rational },
    #[error("graph is empty")]
    EmptyGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ExtractionOutcome {
    MinorFound { model: MinorModel },
    DenseSubgraph { piece: ConnectedPiece },
    Exhausted,
}

impl ExtractionOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            ExtractionOutcome::MinorFound { .. } => "minor_found",
            ExtractionOutcome::DenseSubgraph { .. } => "dense_subgraph",
            ExtractionOutcome::Exhausted => "exhausted",
        }
    }
}

/// One contracted component. `cumulative_*` include this step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionStep {
    pub component: Vec<Vertex>,
    pub edge_loss: usize,
    pub vertex_reduction: usize,
    pub cumulative_loss: usize,
    pub cumulative_reduction: usize,
}

/// Classification after a growth phase; sizes are in quotient vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_prime: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peel_failure: Option<String>,
    /// Host vertices of the last component grown inside `S'`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub last_component: Vec<Vertex>,
    pub last_loss: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Harvest {
    /// `R` in host coordinates.
    pub r: Vec<Vertex>,
    /// `|R ∩ S'|`.
    pub r_prime: usize,
    #[serde(with = "crate::rational_serde")]
    pub r_density: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionTrace {
    #[serde(with = "crate::rational_serde")]
    pub d: Rational,
    pub component_size: usize,
    /// Allowed edge loss per unit of vertex reduction.
    pub budget: usize,
    pub size_cap: usize,
    pub host_edges: usize,
    pub quotient_edges: usize,
    pub contractions: Vec<ContractionStep>,
    pub rounds: Vec<RoundTrace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub harvest: Option<Harvest>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionReport {
    pub profile: String,
    pub t: usize,
    pub k: usize,
    #[serde(flatten)]
    pub outcome: ExtractionOutcome,
    pub trace: ExtractionTrace,
}

/// `e(q) - e(q / H)`: edges inside `H` plus, for every outside vertex, all
/// but one of its edges into `H`.
pub fn contraction_loss(q: &Graph, set: &[Vertex]) -> usize {
    let mut inside = vec![false; q.vertex_count()];
    for &v in set {
        inside[v] = true;
    }
    let mut hits = vec![0usize; q.vertex_count()];
    let mut internal = 0;
    for &v in set {
        for &w in q.neighbors(v) {
            if inside[w] {
                internal += 1;
            } else {
                hits[w] += 1;
            }
        }
    }
    internal / 2 + hits.iter().map(|&h| h.saturating_sub(1)).sum::<usize>()
}

/// Grows a connected set from `seed` inside `allowed`, up to `max_size`
/// vertices, adding at each step the boundary vertex of least resulting
/// loss (then most neighbours not yet adjacent to the set, then smallest
/// index) while the loss stays within `allowance(size)`.
fn grow(
    q: &Graph,
    allowed: &[bool],
    seed: Vertex,
    max_size: usize,
    allowance: impl Fn(usize) -> usize,
) -> (Vec<Vertex>, usize) {
    let n = q.vertex_count();
    let mut set = vec![seed];
    let mut inside = vec![false; n];
    inside[seed] = true;
    let mut loss = 0;
    while set.len() < max_size {
        let mut touched = vec![false; n];
        for &v in &set {
            for &w in q.neighbors(v) {
                touched[w] = true;
            }
        }
        let mut best: Option<(usize, std::cmp::Reverse<usize>, Vertex)> = None;
        for v in 0..n {
            if !allowed[v] || inside[v] || !touched[v] {
                continue;
            }
            set.push(v);
            let l = contraction_loss(q, &set);
            set.pop();
            let fresh = q.neighbors(v).iter().filter(|&&w| !inside[w] && !touched[w]).count();
            let key = (l, std::cmp::Reverse(fresh), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        match best {
            Some((l, _, v)) if l <= allowance(set.len() + 1) => {
                set.push(v);
                inside[v] = true;
                loss = l;
            }
            _ => break,
        }
    }
    set.sort_unstable();
    (set, loss)
}

struct Params {
    d: Rational,
    s: usize,
    b: usize,
    y_threshold: Rational,
    z_threshold: f64,
    r: Rational,
    delta: Rational,
    cap: usize,
}

impl Params {
    fn new(t: usize, k: usize, c: Rational, profile: &ConstantsProfile) -> Self {
        let d = c * Rational::from_integer(k as i64);
        let ln_t = (t as f64).ln();
        let ratio = t as f64 / k as f64;
        let s_raw = to_f64(profile.component_size_factor) * ln_t * ln_t * ratio * ratio;
        let s = (s_raw.ceil() as usize).max(2);
        let b = (profile.edge_loss_frac * d).ceil().to_integer() as usize;
        let z_threshold = to_f64(profile.z_degree_factor * d) * ln_t;
        let cap = (z_threshold * (s - 1) as f64).floor() as usize;
        Self {
            d,
            s,
            b,
            y_threshold: profile.y_frac * d,
            z_threshold,
            r: profile.peel_r,
            delta: profile.peel_delta_frac * d,
            cap,
        }
    }
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Runs the process on `G` for a `K_t` minor and a `k`-connected subgraph.
/// Needs a profile with a numeric scale constant `C` and `d(G) ≥ C·k`.
pub fn small_dense_subgraph(
    g: &Graph,
    t: usize,
    k: usize,
    profile: &ConstantsProfile,
) -> Result<ExtractionReport, ExtractionError> {
    let c = profile.global_c()?;
    if t == 0 || k < t {
        return Err(ExtractionError::BadParameters { t, k });
    }
    let density = g.density().map_err(|_| ExtractionError::EmptyGraph)?;
    // t <= 2 is settled by a single edge; the sizes below need ln t > 0
    let p = Params::new(t.max(3), k, c, profile);
    if density < p.d {
        return Err(ExtractionError::DensityTooLow { density, required: p.d });
    }
    let mut trace = ExtractionTrace {
        d: p.d,
        component_size: p.s,
        budget: p.b,
        size_cap: p.cap,
        host_edges: g.edge_count(),
        quotient_edges: g.edge_count(),
        contractions: Vec::new(),
        rounds: Vec::new(),
        harvest: None,
        notes: Vec::new(),
    };
    let report = |outcome, trace| ExtractionReport { profile: profile.name.clone(), t, k, outcome, trace };
    if t <= 2 {
        // any edge is a K_2 model
        let (u, v) = g.edges().next().expect("positive density");
        let model = if t == 1 { MinorModel::new(vec![vec![u]]) } else { MinorModel::new(vec![vec![u], vec![v]]) };
        trace.notes.push("t <= 2: an edge is the model".into());
        return Ok(report(ExtractionOutcome::MinorFound { model }, trace));
    }

    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    let (mut cum_loss, mut cum_red) = (0usize, 0usize);
    let mut map = contract(g, &parts).expect("no parts");
    let outcome = 'rounds: loop {
        // growth phase: contract full components while the running budget allows
        'grow: loop {
            let q = &map.quotient;
            let m = parts.len();
            let allowed: Vec<bool> = (0..q.vertex_count()).map(|v| v >= m).collect();
            for seed in m..q.vertex_count() {
                let (set, loss) =
                    grow(q, &allowed, seed, p.s, |size| (p.b * (cum_red + size - 1)).saturating_sub(cum_loss));
                if set.len() == p.s {
                    cum_loss += loss;
                    cum_red += p.s - 1;
                    let host = map.lift(&set);
                    trace.contractions.push(ContractionStep {
                        component: host.clone(),
                        edge_loss: loss,
                        vertex_reduction: p.s - 1,
                        cumulative_loss: cum_loss,
                        cumulative_reduction: cum_red,
                    });
                    parts.push(host);
                    map = contract(g, &parts).expect("contracted parts are disjoint and connected");
                    debug_assert_eq!(map.edge_loss, cum_loss);
                    continue 'grow;
                }
            }
            break;
        }
        trace.quotient_edges = map.quotient.edge_count();

        let q = &map.quotient;
        let m = parts.len();
        let nq = q.vertex_count();
        let x_hits = |v: Vertex| q.neighbors(v).iter().filter(|&&w| w < m).count();
        let mut class = vec![b'S'; nq];
        for (v, cl) in class.iter_mut().enumerate() {
            if v < m {
                *cl = b'X';
            } else if Rational::from_integer(x_hits(v) as i64) >= p.y_threshold {
                *cl = b'Y';
            } else if q.degree(v) as f64 >= p.z_threshold {
                *cl = b'Z';
            }
        }
        let count = |c: u8| class.iter().filter(|&&x| x == c).count();
        let s_set: Vec<Vertex> = (0..nq).filter(|&v| class[v] == b'S').collect();
        let mut round = RoundTrace {
            x: m,
            y: count(b'Y'),
            z: count(b'Z'),
            s: s_set.len(),
            s_prime: None,
            peel_failure: None,
            last_component: Vec::new(),
            last_loss: 0,
        };
        let peeled = match special_subset(q, &s_set, p.r, p.delta) {
            Ok(sp) => sp.subset,
            Err(e) => {
                round.peel_failure = Some(e.to_string());
                trace.rounds.push(round);
                break 'rounds None;
            }
        };
        round.s_prime = Some(peeled.len());
        let mut in_sp = vec![false; nq];
        for &v in &peeled {
            in_sp[v] = true;
        }
        // largest component inside S' within b per unit of reduction
        let mut last: (Vec<Vertex>, usize) = (Vec::new(), 0);
        for &seed in &peeled {
            let grown = grow(q, &in_sp, seed, p.s, |size| p.b * (size - 1));
            if grown.0.len() > last.0.len() {
                last = grown;
                if last.0.len() == p.s {
                    break;
                }
            }
        }
        let (h, loss) = last;
        round.last_component = map.lift(&h);
        round.last_loss = loss;
        trace.rounds.push(round);
        if h.len() == p.s {
            // a full component fits after all: contract it and go again
            cum_loss += loss;
            cum_red += p.s - 1;
            let host = map.lift(&h);
            trace.contractions.push(ContractionStep {
                component: host.clone(),
                edge_loss: loss,
                vertex_reduction: p.s - 1,
                cumulative_loss: cum_loss,
                cumulative_reduction: cum_red,
            });
            parts.push(host);
            map = contract(g, &parts).expect("contracted parts are disjoint and connected");
            continue 'rounds;
        }

        let mut in_h = vec![false; nq];
        for &v in &h {
            in_h[v] = true;
        }
        let mut in_r = vec![false; nq];
        for &v in &h {
            for &w in q.neighbors(v) {
                if !in_h[w] && w >= m {
                    in_r[w] = true;
                }
            }
        }
        let r_quot: Vec<Vertex> = (0..nq).filter(|&v| in_r[v]).collect();
        let r_prime = r_quot.iter().filter(|&&v| in_sp[v]).count();
        let r_host = map.lift(&r_quot);
        let r_density = if r_host.is_empty() {
            Rational::from_integer(0)
        } else {
            let sub = g.induced(&r_host).expect("host vertices");
            Rational::new(sub.graph.edge_count() as i64, r_host.len() as i64)
        };
        trace.harvest = Some(Harvest { r: r_host.clone(), r_prime, r_density });
        match most_connected_within(g, &r_host, k) {
            Some(piece) if piece.vertices.len() <= p.cap => break Some(ExtractionOutcome::DenseSubgraph { piece }),
            Some(piece) => {
                trace.notes.push(format!("harvested piece of {} vertices exceeds the cap", piece.vertices.len()));
                break None;
            }
            None => {
                trace.notes.push(format!("no {k}-connected subgraph inside the harvest"));
                break None;
            }
        }
    };
    if let Some(outcome) = outcome {
        return Ok(report(outcome, trace));
    }
    Ok(report(minor_fallback(g, &map, t, &mut trace), trace))
}

/// A `k'`-connected induced subgraph of `G[set]` for the largest `k' ≥ k`
/// admitting one; `None` when not even `k` is possible.
fn most_connected_within(g: &Graph, set: &[Vertex], k: usize) -> Option<ConnectedPiece> {
    let mut best = k_connected_subgraph_within(g, set, k)?;
    while let Some(next) = k_connected_subgraph_within(g, &best.vertices, best.kappa + 1)
        .or_else(|| k_connected_subgraph_within(g, set, best.kappa + 1))
    {
        best = next;
    }
    Some(best)
}

/// Searches the quotient, then the host, for a `K_t` model in host terms.
fn minor_fallback(g: &Graph, map: &ContractionMap, t: usize, trace: &mut ExtractionTrace) -> ExtractionOutcome {
    if let MinorSearch::Found { model } = find_complete_minor(&map.quotient, t, MINOR_FALLBACK_BUDGET) {
        trace.notes.push("complete minor found in the quotient and lifted".into());
        let lifted = MinorModel::new(model.branch_sets.iter().map(|b| map.lift(b)).collect());
        return ExtractionOutcome::MinorFound { model: lifted };
    }
    if let MinorSearch::Found { model } = find_complete_minor(g, t, MINOR_FALLBACK_BUDGET) {
        trace.notes.push("complete minor found in the host".into());
        return ExtractionOutcome::MinorFound { model };
    }
    ExtractionOutcome::Exhausted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::Family;
    use crate::graph::named::*;
    use crate::verify::{check_extraction_trace, check_minor_model, is_k_connected};

    fn planted(n: usize, seed: u64) -> Graph {
        Family::PlantedDense { n, pocket_size: 20, pocket_p: 0.9, ambient_p: 0.05 }.generate(seed).unwrap()
    }

    fn check(g: &Graph, rep: &ExtractionReport) {
        match &rep.outcome {
            ExtractionOutcome::DenseSubgraph { piece } => {
                let sub = g.induced(&piece.vertices).unwrap();
                assert!(is_k_connected(&sub.graph, rep.k));
                assert!(piece.vertices.len() <= rep.trace.size_cap);
            }
            ExtractionOutcome::MinorFound { model } => {
                assert_eq!(model.order(), rep.t);
                assert!(check_minor_model(g, model).is_empty());
            }
            ExtractionOutcome::Exhausted => {}
        }
        for w in rep.trace.contractions.iter() {
            assert!(w.cumulative_loss <= rep.trace.budget * w.cumulative_reduction);
        }
        let lost: usize = rep.trace.contractions.iter().map(|c| c.edge_loss).sum();
        assert_eq!(rep.trace.host_edges - rep.trace.quotient_edges, lost);
        assert_eq!(check_extraction_trace(g, rep), Vec::<String>::new());
    }

    #[test]
    fn planted_pocket() {
        let g = planted(80, 3);
        let rep = small_dense_subgraph(&g, 3, 4, &ConstantsProfile::desk_small()).unwrap();
        check(&g, &rep);
        for seed in 0..8 {
            let g =
                Family::PlantedDense { n: 60 + 8 * seed as usize, pocket_size: 20, pocket_p: 0.95, ambient_p: 0.05 }
                    .generate(seed)
                    .unwrap();
            check(&g, &small_dense_subgraph(&g, 3, 4, &ConstantsProfile::desk_small()).unwrap());
        }
        let ExtractionOutcome::DenseSubgraph { piece } = &rep.outcome else { panic!("{:?}", rep.outcome) };
        assert!(piece.kappa >= 4 && piece.vertices.len() < 80);
        assert_eq!(rep.profile, "desk-small");
    }

    #[test]
    fn sparse_tail_is_contracted() {
        let g = Graph::disjoint_union(&[complete(40), path(50)]);
        let mut edges: Vec<(usize, usize)> = g.edges().collect();
        edges.push((0, 40));
        let g = Graph::build(90, &edges).unwrap();
        let rep = small_dense_subgraph(&g, 3, 4, &ConstantsProfile::desk_small()).unwrap();
        check(&g, &rep);
        assert!(rep.trace.contractions.len() >= 5);
        // the first component takes a clique vertex, so the whole clique
        // lands in Y and the lifted minor is the result
        assert_eq!(rep.outcome.name(), "minor_found");
    }

    #[test]
    fn complete_host() {
        let g = complete(20);
        let rep = small_dense_subgraph(&g, 3, 4, &ConstantsProfile::desk_small()).unwrap();
        check(&g, &rep);
        assert_eq!(rep.outcome.name(), "dense_subgraph");
    }

    #[test]
    fn gates() {
        let err = small_dense_subgraph(&cycle(100), 3, 4, &ConstantsProfile::desk_small()).unwrap_err();
        assert!(matches!(
            err,
            ExtractionError::DensityTooLow { density, required }
                if density == Rational::from_integer(1) && required == Rational::from_integer(8)
        ));
        assert!(matches!(
            small_dense_subgraph(&complete(20), 3, 4, &ConstantsProfile::paper()),
            Err(ExtractionError::Profile(ProfileError::Symbolic { .. }))
        ));
        assert!(matches!(
            small_dense_subgraph(&complete(20), 5, 4, &ConstantsProfile::desk_small()),
            Err(ExtractionError::BadParameters { .. })
        ));
    }

    #[test]
    fn loss_matches_contraction() {
        let g = petersen();
        let set = [0, 1, 2];
        let map = contract(&g, &[set.to_vec()]).unwrap();
        assert_eq!(contraction_loss(&g, &set), map.edge_loss);
    }
}
