//! Maximum independent sets and cliques on at most 64 vertices.
//!
//! The size is found by branch and bound (branch on a maximum-degree
//! candidate, bound by a greedy clique cover, solve paths and cycles
//! directly). The witness is then rebuilt vertex by vertex in index order,
//! which makes it the lexicographically smallest maximum set.

use serde::{Deserialize, Serialize};

use super::{bits, full_mask, mask_vertices, too_large, OracleError};
use crate::graph::{Graph, Vertex};

pub const INDEPENDENCE_LIMIT: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSet {
    pub size: usize,
    pub witness: Vec<Vertex>,
}

pub fn independence_number(g: &Graph) -> Result<IndependentSet, OracleError> {
    let n = g.vertex_count();
    if n > INDEPENDENCE_LIMIT {
        return Err(too_large("independence_number", n, INDEPENDENCE_LIMIT));
    }
    let adj = g.masks().expect("within mask width");
    let set = max_independent_set_within(&adj, full_mask(n));
    Ok(IndependentSet { size: set.count_ones() as usize, witness: mask_vertices(set) })
}

/// Lexicographically smallest maximum clique.
pub fn max_clique(g: &Graph) -> Result<Vec<Vertex>, OracleError> {
    let n = g.vertex_count();
    if n > 64 {
        return Err(too_large("max_clique", n, 64));
    }
    let comp = complement_masks(&g.masks().expect("within mask width"));
    Ok(mask_vertices(max_independent_set_within(&comp, full_mask(n))))
}

pub fn clique_number(g: &Graph) -> Result<usize, OracleError> {
    max_clique(g).map(|c| c.len())
}

pub(crate) fn complement_masks(adj: &[u64]) -> Vec<u64> {
    let full = full_mask(adj.len());
    adj.iter().enumerate().map(|(v, &m)| !m & full & !(1u64 << v)).collect()
}

/// Lexicographically smallest maximum independent subset of `cand`.
pub fn max_independent_set_within(adj: &[u64], cand: u64) -> u64 {
    let mut target = alpha_within(adj, cand);
    let mut chosen = 0u64;
    let mut rest = cand;
    while target > 0 {
        let v = rest.trailing_zeros() as usize;
        let after = rest & !adj[v] & !(1u64 << v);
        if alpha_within(adj, after) + 1 == target {
            chosen |= 1u64 << v;
            rest = after;
            target -= 1;
        } else {
            rest &= !(1u64 << v);
        }
    }
    chosen
}

/// `α(G[cand])`.
pub(crate) fn alpha_within(adj: &[u64], cand: u64) -> usize {
    let mut best = 0;
    search(adj, cand, 0, &mut best);
    best
}

fn search(adj: &[u64], mut cand: u64, mut size: usize, best: &mut usize) {
    // vertices isolated within the candidates belong to every maximum set
    loop {
        let isolated = bits(cand).fold(0u64, |m, v| if adj[v] & cand == 0 { m | (1 << v) } else { m });
        if isolated == 0 {
            break;
        }
        size += isolated.count_ones() as usize;
        cand &= !isolated;
    }
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + clique_cover(adj, cand) <= *best {
        return;
    }
    let (v, deg) = bits(cand)
        .map(|v| (v, (adj[v] & cand).count_ones()))
        .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
        .expect("non-empty");
    if deg <= 2 {
        *best = (*best).max(size + paths_and_cycles(adj, cand));
        return;
    }
    search(adj, cand & !adj[v] & !(1 << v), size + 1, best);
    search(adj, cand & !(1 << v), size, best);
}

/// Number of cliques in a greedy clique partition of `cand`.
fn clique_cover(adj: &[u64], mut cand: u64) -> usize {
    let mut count = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let mut clique = 1u64 << v;
        let mut open = cand & adj[v];
        while open != 0 {
            let w = open.trailing_zeros() as usize;
            clique |= 1 << w;
            open &= adj[w];
        }
        cand &= !clique;
        count += 1;
    }
    count
}

/// α of a graph with maximum degree at most two.
fn paths_and_cycles(adj: &[u64], cand: u64) -> usize {
    let mut left = cand;
    let mut total = 0;
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & cand & !comp;
            comp |= new;
            frontier |= new;
        }
        left &= !comp;
        let k = comp.count_ones() as usize;
        let is_cycle = bits(comp).all(|v| (adj[v] & cand).count_ones() == 2);
        total += if is_cycle { k / 2 } else { k.div_ceil(2) };
    }
    total
}
