//! Independent certificate checkers.
//!
//! Nothing in this module calls into the search code: adjacency is read
//! directly from the host graph and the connectivity check runs its own
//! augmenting-path routine on a dense residual matrix.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};
use crate::model::{CoredModel, Linkage, MinorModel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum ModelViolation {
    VertexOutOfRange { part: usize, vertex: Vertex },
    EmptyBranchSet { part: usize },
    Overlap { vertex: Vertex, first: usize, second: usize },
    Disconnected { part: usize },
    NotAdjacent { first: usize, second: usize },
    RootCount { expected: usize, found: usize },
    RootMultiplicity { part: usize, roots: usize },
}

/// Checks every clause of the model definition and lists all violations.
pub fn check_minor_model(host: &Graph, model: &MinorModel) -> Vec<ModelViolation> {
    let n = host.vertex_count();
    let mut out = Vec::new();
    let mut owner = vec![usize::MAX; n];
    for (part, set) in model.branch_sets.iter().enumerate() {
        if set.is_empty() {
            out.push(ModelViolation::EmptyBranchSet { part });
        }
        for &v in set {
            if v >= n {
                out.push(ModelViolation::VertexOutOfRange { part, vertex: v });
            } else if owner[v] != usize::MAX {
                out.push(ModelViolation::Overlap { vertex: v, first: owner[v], second: part });
            } else {
                owner[v] = part;
            }
        }
    }
    for (part, set) in model.branch_sets.iter().enumerate() {
        let inside: Vec<Vertex> = set.iter().copied().filter(|&v| v < n).collect();
        if !inside.is_empty() && !connected_by_search(host, &inside) {
            out.push(ModelViolation::Disconnected { part });
        }
    }
    let h = model.branch_sets.len();
    let mut joined = vec![vec![false; h]; h];
    for u in 0..n {
        if owner[u] == usize::MAX {
            continue;
        }
        for &w in host.neighbors(u) {
            if owner[w] != usize::MAX && owner[w] != owner[u] {
                joined[owner[u]][owner[w]] = true;
            }
        }
    }
    for a in 0..h {
        for b in a + 1..h {
            if !joined[a][b] {
                out.push(ModelViolation::NotAdjacent { first: a, second: b });
            }
        }
    }
    if let Some(roots) = &model.roots {
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != h || roots.len() != h {
            out.push(ModelViolation::RootCount { expected: h, found: distinct.len() });
        }
        for (part, set) in model.branch_sets.iter().enumerate() {
            let count = set.iter().filter(|v| distinct.binary_search(v).is_ok()).count();
            if count != 1 {
                out.push(ModelViolation::RootMultiplicity { part, roots: count });
            }
        }
    }
    out
}

fn connected_by_search(host: &Graph, set: &[Vertex]) -> bool {
    let mut member = vec![false; host.vertex_count()];
    for &v in set {
        member[v] = true;
    }
    let mut reached = vec![false; host.vertex_count()];
    let mut stack = vec![set[0]];
    reached[set[0]] = true;
    while let Some(u) = stack.pop() {
        for &w in host.neighbors(u) {
            if member[w] && !reached[w] {
                reached[w] = true;
                stack.push(w);
            }
        }
    }
    set.iter().all(|&v| reached[v])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum LinkageViolation {
    CountMismatch { pairs: usize, paths: usize },
    BadTerminals,
    WrongEnds { path: usize },
    NotAWalk { path: usize, position: usize },
    RepeatedVertex { path: usize, vertex: Vertex },
    Shared { vertex: Vertex, first: usize, second: usize },
}

/// Checks that `paths[i]` is a path from `pairs[i].0` to `pairs[i].1` and the
/// paths are pairwise vertex-disjoint.
pub fn check_linkage(host: &Graph, linkage: &Linkage) -> Vec<LinkageViolation> {
    let mut out = Vec::new();
    if linkage.pairs.len() != linkage.paths.len() {
        out.push(LinkageViolation::CountMismatch { pairs: linkage.pairs.len(), paths: linkage.paths.len() });
        return out;
    }
    if !crate::model::terminals_well_formed(&linkage.pairs) {
        out.push(LinkageViolation::BadTerminals);
    }
    let n = host.vertex_count();
    let mut owner = vec![usize::MAX; n];
    for (i, (path, &(s, t))) in linkage.paths.iter().zip(&linkage.pairs).enumerate() {
        if path.first() != Some(&s) || path.last() != Some(&t) {
            out.push(LinkageViolation::WrongEnds { path: i });
        }
        for (pos, &v) in path.iter().enumerate() {
            if v >= n {
                out.push(LinkageViolation::NotAWalk { path: i, position: pos });
                continue;
            }
            if pos > 0 && !host.has_edge(path[pos - 1], v) {
                out.push(LinkageViolation::NotAWalk { path: i, position: pos });
            }
            match owner[v] {
                usize::MAX => owner[v] = i,
                o if o == i => out.push(LinkageViolation::RepeatedVertex { path: i, vertex: v }),
                o => out.push(LinkageViolation::Shared { vertex: v, first: o, second: i }),
            }
        }
    }
    out
}

/// First edge whose ends share a color, or `Ok(colors used)`.
pub fn check_coloring(host: &Graph, coloring: &[usize]) -> Result<usize, ColoringViolation> {
    if coloring.len() != host.vertex_count() {
        return Err(ColoringViolation::Length { expected: host.vertex_count(), found: coloring.len() });
    }
    for u in host.vertices() {
        for &v in host.neighbors(u) {
            if u < v && coloring[u] == coloring[v] {
                return Err(ColoringViolation::Conflict { u, v, color: coloring[u] });
            }
        }
    }
    let mut used = coloring.to_vec();
    used.sort_unstable();
    used.dedup();
    Ok(used.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum ColoringViolation {
    #[error("coloring has {found} entries for {expected} vertices")]
    Length { expected: usize, found: usize },
    #[error("edge ({u}, {v}) has both ends colored {color}")]
    Conflict { u: Vertex, v: Vertex, color: usize },
}

pub fn is_independent_set(host: &Graph, set: &[Vertex]) -> bool {
    set.iter().all(|&v| v < host.vertex_count())
        && set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !host.has_edge(u, v)))
}

pub fn is_clique(host: &Graph, set: &[Vertex]) -> bool {
    set.iter().all(|&v| v < host.vertex_count())
        && set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| host.has_edge(u, v)))
}

/// Whether deleting `separator` leaves a disconnected graph.
pub fn separates(host: &Graph, separator: &[Vertex]) -> bool {
    let n = host.vertex_count();
    let mut gone = vec![false; n];
    for &v in separator {
        if v < n {
            gone[v] = true;
        }
    }
    let rest: Vec<Vertex> = (0..n).filter(|&v| !gone[v]).collect();
    rest.len() >= 2 && !connected_by_search(host, &rest)
}

/// Whether deleting `separator` leaves no path from `a` to `b` (vertices of
/// `a` or `b` inside the separator count as blocked).
pub fn separates_sets(host: &Graph, a: &[Vertex], b: &[Vertex], separator: &[Vertex]) -> bool {
    let n = host.vertex_count();
    let mut gone = vec![false; n];
    for &v in separator {
        gone[v] = true;
    }
    let mut reached = vec![false; n];
    let mut stack: Vec<Vertex> = a.iter().copied().filter(|&v| !gone[v]).collect();
    for &v in &stack {
        reached[v] = true;
    }
    while let Some(u) = stack.pop() {
        for &w in host.neighbors(u) {
            if !gone[w] && !reached[w] {
                reached[w] = true;
                stack.push(w);
            }
        }
    }
    b.iter().all(|&v| !reached[v])
}

/// Number of internally disjoint `s`-`t` paths, capped at `cap`, computed
/// with a dense split-vertex residual matrix and DFS augmentation.
pub fn local_connectivity(host: &Graph, s: Vertex, t: Vertex, cap: usize) -> usize {
    let n = host.vertex_count();
    // node 2v = v_in, 2v+1 = v_out
    let size = 2 * n;
    let mut cap_m = vec![0u8; size * size];
    let big = 2u8;
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        cap_m[(2 * v) * size + 2 * v + 1] = c;
        for &w in host.neighbors(v) {
            cap_m[(2 * v + 1) * size + 2 * w] = 1;
        }
    }
    if host.has_edge(s, t) {
        // direct edge is one path; remove it so it is not reused
        cap_m[(2 * s + 1) * size + 2 * t] = 0;
    }
    let direct = usize::from(host.has_edge(s, t));
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = direct;
    let mut seen = vec![false; size];
    while flow < cap {
        seen.iter_mut().for_each(|x| *x = false);
        if !augment(&mut cap_m, size, source, sink, &mut seen) {
            break;
        }
        flow += 1;
    }
    flow
}

fn augment(cap: &mut [u8], size: usize, u: usize, sink: usize, seen: &mut [bool]) -> bool {
    if u == sink {
        return true;
    }
    seen[u] = true;
    for w in 0..size {
        if !seen[w] && cap[u * size + w] > 0 && augment(cap, size, w, sink, seen) {
            cap[u * size + w] -= 1;
            cap[w * size + u] += 1;
            return true;
        }
    }
    false
}

/// `κ(H) >= k`, by definition: more than `k` vertices and at least `k`
/// internally disjoint paths between every non-adjacent pair.
pub fn is_k_connected(host: &Graph, k: usize) -> bool {
    let n = host.vertex_count();
    if k == 0 {
        return true;
    }
    if n <= k {
        return false;
    }
    for u in 0..n {
        if host.degree(u) < k {
            return false;
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if !host.has_edge(u, v) && local_connectivity(host, u, v, k) < k {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreTangentVerdict {
    pub core_ok: bool,
    pub tangent_ok: bool,
    /// For each pair `(i, j)` with `i < j`, an edge inside the core joining
    /// branch sets `i` and `j`, if one exists.
    pub witnesses: Vec<((usize, usize), Option<(Vertex, Vertex)>)>,
    /// `|V(H) ∩ X_i|` for each branch set.
    pub tangent_hits: Vec<usize>,
}

/// Core: every pair of branch sets is joined by an edge with both ends in
/// `S`. Tangent: the subgraph meets each branch set in exactly one vertex.
pub fn check_core_tangent(host: &Graph, cm: &CoredModel) -> CoreTangentVerdict {
    let n = host.vertex_count();
    let mut in_core = vec![false; n];
    for &v in &cm.core {
        if v < n {
            in_core[v] = true;
        }
    }
    let sets = &cm.model.branch_sets;
    let mut witnesses = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let w = sets[i]
                .iter()
                .filter(|&&u| u < n && in_core[u])
                .find_map(|&u| sets[j].iter().find(|&&v| v < n && in_core[v] && host.has_edge(u, v)).map(|&v| (u, v)));
            witnesses.push(((i, j), w));
        }
    }
    let tangent_hits: Vec<usize> = sets.iter().map(|s| s.iter().filter(|v| cm.tangent.contains(v)).count()).collect();
    CoreTangentVerdict {
        core_ok: witnesses.iter().all(|(_, w)| w.is_some()),
        tangent_ok: tangent_hits.iter().all(|&c| c == 1),
        witnesses,
        tangent_hits,
    }
}

/// Re-derives an extraction trace from the host graph: component shapes,
/// per-step and cumulative edge losses, the last component's loss, the
/// harvested neighbourhood and the final payload. Returns every mismatch.
pub fn check_extraction_trace(host: &Graph, report: &crate::extract::ExtractionReport) -> Vec<String> {
    use crate::extract::ExtractionOutcome;
    use std::collections::HashSet;

    let n = host.vertex_count();
    let trace = &report.trace;
    let mut out = Vec::new();
    let mut class: Vec<usize> = (0..n).map(|v| n + v).collect();
    let quotient_edges = |class: &[usize]| -> HashSet<(usize, usize)> {
        host.edges()
            .filter(|&(u, v)| class[u] != class[v])
            .map(|(u, v)| (class[u].min(class[v]), class[u].max(class[v])))
            .collect()
    };
    let mut edges = quotient_edges(&class);
    let (mut cum_loss, mut cum_red) = (0usize, 0usize);
    for (i, step) in trace.contractions.iter().enumerate() {
        let comp = &step.component;
        if comp.len() != trace.component_size {
            out.push(format!("step {i}: component has {} vertices, expected {}", comp.len(), trace.component_size));
        }
        if comp.iter().any(|&v| v >= n || class[v] < n) {
            out.push(format!("step {i}: component reuses or leaves the host"));
            continue;
        }
        if !host.is_connected_set(comp) {
            out.push(format!("step {i}: component is not connected"));
        }
        for &v in comp {
            class[v] = i;
        }
        let next = quotient_edges(&class);
        let loss = edges.len() - next.len();
        edges = next;
        cum_loss += loss;
        cum_red += comp.len() - 1;
        if loss != step.edge_loss || cum_loss != step.cumulative_loss || cum_red != step.cumulative_reduction {
            out.push(format!(
                "step {i}: recorded loss {}/{} reduction {}, recomputed {loss}/{cum_loss} {cum_red}",
                step.edge_loss, step.cumulative_loss, step.cumulative_reduction
            ));
        }
        if cum_loss > trace.budget * cum_red {
            out.push(format!("step {i}: cumulative loss {cum_loss} exceeds {} x {cum_red}", trace.budget));
        }
    }
    if host.edge_count() != trace.host_edges || edges.len() != trace.quotient_edges {
        out.push(format!(
            "edge counts: recorded {} -> {}, recomputed {} -> {}",
            trace.host_edges,
            trace.quotient_edges,
            host.edge_count(),
            edges.len()
        ));
    }
    let contracted = |v: Vertex| class[v] < n;
    let last = trace.rounds.last().map(|r| r.last_component.clone()).unwrap_or_default();
    if !last.is_empty() {
        if last.iter().any(|&v| v >= n || contracted(v)) || !host.is_connected_set(&last) {
            out.push("last component is not a connected set of uncontracted vertices".into());
        } else {
            let marker = usize::MAX - 1;
            let mut after = class.clone();
            for &v in &last {
                after[v] = marker;
            }
            let loss = edges.len() - quotient_edges(&after).len();
            let recorded = trace.rounds.last().map_or(0, |r| r.last_loss);
            if loss != recorded {
                out.push(format!("last component loss recorded {recorded}, recomputed {loss}"));
            }
            if loss > trace.budget * (last.len() - 1) {
                out.push(format!("last component loss {loss} exceeds {} x {}", trace.budget, last.len() - 1));
            }
            if let Some(h) = &trace.harvest {
                let mut r: Vec<Vertex> = last
                    .iter()
                    .flat_map(|&v| host.neighbors(v).iter().copied())
                    .filter(|&w| !contracted(w) && !last.contains(&w))
                    .collect();
                r.sort_unstable();
                r.dedup();
                if r != h.r {
                    out.push("harvested set differs from the uncontracted neighbourhood".into());
                }
            }
        }
    }
    match &report.outcome {
        ExtractionOutcome::DenseSubgraph { piece } => {
            if piece.vertices.len() > trace.size_cap {
                out.push(format!("piece of {} vertices exceeds the cap {}", piece.vertices.len(), trace.size_cap));
            }
            if let Some(h) = &trace.harvest {
                if piece.vertices.iter().any(|v| h.r.binary_search(v).is_err()) {
                    out.push("piece leaves the harvested set".into());
                }
            }
            match host.induced(&piece.vertices) {
                Ok(sub) if is_k_connected(&sub.graph, report.k) => {}
                _ => out.push(format!("piece is not {}-connected", report.k)),
            }
        }
        ExtractionOutcome::MinorFound { model } => {
            if model.order() != report.t {
                out.push(format!("model has order {}, expected {}", model.order(), report.t));
            }
            for v in check_minor_model(host, model) {
                out.push(format!("model: {v:?}"));
            }
        }
        ExtractionOutcome::Exhausted => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn petersen_spoke_model() {
        let p = petersen();
        let model = MinorModel::new((0..5).map(|i| vec![i, i + 5]).collect());
        assert!(check_minor_model(&p, &model).is_empty());
        let mut merged = model.clone();
        let extra = merged.branch_sets.remove(1);
        merged.branch_sets[0].extend(extra);
        // {0,5,1,6} is connected but the four remaining parts still need
        // pairwise adjacency; parts 1 and 2 are now {2,7} and {3,8}: adjacent.
        // Drop the last part's spoke to force a disconnection instead.
        merged.branch_sets[3] = vec![4, 7];
        assert!(!check_minor_model(&p, &merged).is_empty());
    }

    #[test]
    fn rooted_singletons() {
        let k5 = complete(5);
        let model = MinorModel::rooted((0..5).map(|i| vec![i]).collect(), (0..5).collect());
        assert!(check_minor_model(&k5, &model).is_empty());
        let bad = MinorModel::rooted(vec![vec![0, 1], vec![2]], vec![0, 1]);
        let v = check_minor_model(&k5, &bad);
        assert!(v.contains(&ModelViolation::RootMultiplicity { part: 0, roots: 2 }));
        assert!(v.contains(&ModelViolation::RootMultiplicity { part: 1, roots: 0 }));
    }

    #[test]
    fn coloring_conflict_is_named() {
        assert_eq!(check_coloring(&cycle(4), &[0, 1, 0, 1]), Ok(2));
        assert_eq!(check_coloring(&cycle(4), &[0, 1, 1, 0]), Err(ColoringViolation::Conflict { u: 0, v: 3, color: 0 }));
    }

    #[test]
    fn linkage_clauses() {
        let k4 = complete(4);
        let ok = Linkage { pairs: vec![(0, 2), (1, 3)], paths: vec![vec![0, 2], vec![1, 3]] };
        assert!(check_linkage(&k4, &ok).is_empty());
        let bad = Linkage { pairs: vec![(0, 2), (1, 3)], paths: vec![vec![0, 1, 2], vec![1, 3]] };
        assert!(check_linkage(&k4, &bad).contains(&LinkageViolation::Shared { vertex: 1, first: 0, second: 1 }));
    }

    #[test]
    fn connectivity_by_definition() {
        assert!(is_k_connected(&complete(5), 4));
        assert!(!is_k_connected(&complete(5), 5));
        assert!(is_k_connected(&petersen(), 3));
        assert!(!is_k_connected(&petersen(), 4));
        assert!(is_k_connected(&cycle(6), 2));
        assert!(!is_k_connected(&path(4), 2));
        assert!(separates(&path(4), &[1]));
        assert!(!separates(&cycle(5), &[1]));
    }

    #[test]
    fn core_and_tangent() {
        let k6 = complete(6);
        let model = MinorModel::new(vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        let cm = CoredModel { model: model.clone(), core: (0..6).collect(), tangent: vec![0, 2, 4] };
        let v = check_core_tangent(&k6, &cm);
        assert!(v.core_ok && v.tangent_ok);
        let cm = CoredModel { model: model.clone(), core: vec![0, 1, 2, 3], tangent: vec![0, 2, 4] };
        assert!(!check_core_tangent(&k6, &cm).core_ok);
        let cm = CoredModel { model, core: (0..6).collect(), tangent: vec![0, 1, 2, 4] };
        assert!(!check_core_tangent(&k6, &cm).tangent_ok);
    }
}
