//! Highly connected induced subgraphs by k-core reduction and splitting
//! along minimum separators.
//!
//! A `k`-connected induced subgraph `H` of a piece survives the k-core, lies
//! in one core component, and misses at most `|X| < k` vertices of any
//! separator `X`; so `H - X` is connected and `H ⊆ C ∪ X` for one component
//! `C` of the piece minus `X`. Recursing on every such `C ∪ X` therefore
//! finds `H` whenever one exists.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::oracles::{chromatic_number, vertex_connectivity, OracleError};
use crate::Rational;

#[derive(Debug, Error, PartialEq)]
pub enum ConnectError {
    #[error("graph is empty")]
    EmptyGraph,
    #[error("hypothesis fails: chi(G) = {chi} is below {need} = {factor}k")]
    ChromaticTooSmall { chi: usize, need: usize, factor: u64 },
    #[error("no {k}-connected subgraph exists")]
    NotFound { k: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// An induced subgraph with its connectivity, both in host coordinates.
/// `separator` is a minimum separator (`None` for complete graphs, whose
/// connectivity is `v - 1` by adjacency alone).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectedPiece {
    pub vertices: Vec<Vertex>,
    pub kappa: usize,
    pub separator: Option<Vec<Vertex>>,
}

impl ConnectedPiece {
    fn measure(g: &Graph, vertices: Vec<Vertex>) -> Self {
        let sub = g.induced_sorted(vertices);
        let c = vertex_connectivity(&sub.graph);
        Self { kappa: c.kappa, separator: c.separator.map(|s| sub.host_vertices(s)), vertices: sub.to_host }
    }
}

/// Vertices of `set` surviving repeated removal of those with fewer than
/// `k` neighbours inside.
pub fn k_core_within(g: &Graph, set: &[Vertex], k: usize) -> Vec<Vertex> {
    let mut alive = vec![false; g.vertex_count()];
    for &v in set {
        alive[v] = true;
    }
    let mut deg: Vec<usize> = (0..g.vertex_count())
        .map(|v| if alive[v] { g.neighbors(v).iter().filter(|&&w| alive[w]).count() } else { 0 })
        .collect();
    let mut stack: Vec<Vertex> = set.iter().copied().filter(|&v| deg[v] < k).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] + 1 == k {
                    stack.push(w);
                }
            }
        }
    }
    let mut out: Vec<Vertex> = set.iter().copied().filter(|&v| alive[v]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Splits `set` until every remaining piece is `k`-connected, calling
/// `visit` on each such piece; stops early when `visit` returns true.
fn split_search(
    g: &Graph,
    set: Vec<Vertex>,
    k: usize,
    seen: &mut HashSet<Vec<Vertex>>,
    visit: &mut dyn FnMut(ConnectedPiece) -> bool,
) -> bool {
    let core = k_core_within(g, &set, k);
    let mut alive = vec![false; g.vertex_count()];
    for &v in &core {
        alive[v] = true;
    }
    for comp in g.components_within(&alive) {
        if comp.len() <= k || !seen.insert(comp.clone()) {
            continue;
        }
        let piece = ConnectedPiece::measure(g, comp);
        if piece.kappa >= k {
            if visit(piece) {
                return true;
            }
            continue;
        }
        let sep = piece.separator.expect("a complete piece with more than k vertices is k-connected");
        let mut blocked = vec![false; g.vertex_count()];
        for &v in &piece.vertices {
            blocked[v] = true;
        }
        for &v in &sep {
            blocked[v] = false;
        }
        let mut parts: Vec<Vec<Vertex>> = g
            .components_within(&blocked)
            .into_iter()
            .map(|mut c| {
                c.extend_from_slice(&sep);
                c.sort_unstable();
                c
            })
            .collect();
        // densest side first, ties by smallest vertex
        parts.sort_by_cached_key(|p| {
            let sub = g.induced_sorted(p.clone());
            let e = sub.graph.edge_count() as i64;
            (std::cmp::Reverse(Rational::new(e, p.len() as i64)), p[0])
        });
        for p in parts {
            if split_search(g, p, k, seen, visit) {
                return true;
            }
        }
    }
    false
}

/// Some induced `k`-connected subgraph of `G[set]`, if one exists.
pub fn k_connected_subgraph_within(g: &Graph, set: &[Vertex], k: usize) -> Option<ConnectedPiece> {
    let mut found = None;
    let mut seen = HashSet::new();
    split_search(g, set.to_vec(), k, &mut seen, &mut |p| {
        found = Some(p);
        true
    });
    found
}

pub fn k_connected_subgraph(g: &Graph, k: usize) -> Option<ConnectedPiece> {
    k_connected_subgraph_within(g, &g.vertices().collect::<Vec<_>>(), k)
}

/// Every piece at which the splitting stops: each `k`-connected induced
/// subgraph lies inside one of them. Pieces of more than `max_size`
/// vertices are still reported; callers filter.
pub fn k_connected_pieces(g: &Graph, set: &[Vertex], k: usize) -> Vec<ConnectedPiece> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    split_search(g, set.to_vec(), k, &mut seen, &mut |p| {
        out.push(p);
        false
    });
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaderOutcome {
    pub piece: ConnectedPiece,
    #[serde(with = "crate::rational_serde")]
    pub density: Rational,
    /// `⌈d(G)/2⌉`.
    pub target: usize,
}

/// An induced subgraph with connectivity at least `⌈d(G)/2⌉`.
pub fn mader_connected_subgraph(g: &Graph) -> Result<MaderOutcome, ConnectError> {
    let density = g.density().map_err(|_| ConnectError::EmptyGraph)?;
    let target = (density / 2).ceil().to_integer() as usize;
    if target == 0 {
        let piece = ConnectedPiece { vertices: vec![0], kappa: 0, separator: Some(Vec::new()) };
        return Ok(MaderOutcome { piece, density, target });
    }
    let piece = k_connected_subgraph(g, target).ok_or(ConnectError::NotFound { k: target })?;
    Ok(MaderOutcome { piece, density, target })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighChromaticOutcome {
    pub piece: ConnectedPiece,
    pub chi_host: usize,
    pub chi_piece: usize,
    pub k: usize,
    /// `chi_piece ≥ chi_host - loss·k`.
    pub guarantee_met: bool,
}

/// The `k`-connected piece of largest chromatic number, gated on
/// `χ(G) ≥ need·k`; reports whether `χ(H) ≥ χ(G) - loss·k`.
pub fn high_chromatic_connected_subgraph(
    g: &Graph,
    k: usize,
    need: u64,
    loss: u64,
) -> Result<HighChromaticOutcome, ConnectError> {
    if g.vertex_count() == 0 {
        return Err(ConnectError::EmptyGraph);
    }
    let chi_host = chromatic_number(g)?.chi;
    let threshold = need as usize * k;
    if chi_host < threshold {
        return Err(ConnectError::ChromaticTooSmall { chi: chi_host, need: threshold, factor: need });
    }
    let mut best: Option<(usize, ConnectedPiece)> = None;
    for piece in k_connected_pieces(g, &g.vertices().collect::<Vec<_>>(), k) {
        let sub = g.induced_sorted(piece.vertices.clone());
        let chi = chromatic_number(&sub.graph)?.chi;
        if best.as_ref().is_none_or(|(b, _)| chi > *b) {
            best = Some((chi, piece));
        }
    }
    let (chi_piece, piece) = best.ok_or(ConnectError::NotFound { k })?;
    Ok(HighChromaticOutcome { guarantee_met: chi_piece + loss as usize * k >= chi_host, piece, chi_host, chi_piece, k })
}
