//! Complete-minor search.
//!
//! A `K_h` minor of a connected graph is a clique in some quotient by a
//! partition into connected classes. The exact search walks such partitions
//! by contracting one quotient edge at a time, with three reductions:
//!
//! * a connected quotient with `q` vertices and `E` edges has no `K_k` minor
//!   unless `C(k,2) <= E - (q - k)` (each contraction loses an edge);
//! * a class of quotient degree below `h - 1` can never become a branch set
//!   on its own, and its degree never grows, so only its own contractions
//!   are branched on;
//! * partitions are stored canonically (classes ordered by smallest vertex)
//!   and never expanded twice.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::independence::{complement_masks, max_independent_set_within};
use super::{bits, full_mask, too_large, OracleError};
use crate::graph::{Graph, Vertex};
use crate::model::MinorModel;

pub const HADWIGER_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hadwiger {
    /// Best certified lower bound (the exact value when `exact`).
    pub h: usize,
    pub model: MinorModel,
    pub exact: bool,
    pub upper: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum MinorSearch {
    Found { model: MinorModel },
    Absent,
    Unknown,
}

pub fn hadwiger_number(g: &Graph) -> Result<Hadwiger, OracleError> {
    let n = g.vertex_count();
    if n > HADWIGER_LIMIT {
        return Err(too_large("hadwiger_number", n, HADWIGER_LIMIT));
    }
    let mut best = greedy_minor(g);
    let upper = edge_bound(g);
    let mut h = best.order();
    while h < upper {
        match search_all_components(g, h + 1, u64::MAX) {
            MinorSearch::Found { model } => {
                h += 1;
                best = model;
            }
            MinorSearch::Absent => break,
            MinorSearch::Unknown => unreachable!("unbudgeted search"),
        }
    }
    Ok(Hadwiger { h, model: best, exact: true, upper: h })
}

/// Greedy lower bound and edge-count upper bound, for any size.
pub fn hadwiger_bounds(g: &Graph) -> Hadwiger {
    let model = greedy_minor(g);
    let upper = edge_bound(g);
    Hadwiger { h: model.order(), exact: model.order() == upper, upper, model }
}

/// Exact decision for at most [`HADWIGER_LIMIT`] vertices.
pub fn has_complete_minor(g: &Graph, h: usize) -> Result<Option<MinorModel>, OracleError> {
    let n = g.vertex_count();
    if n > HADWIGER_LIMIT {
        return Err(too_large("has_complete_minor", n, HADWIGER_LIMIT));
    }
    Ok(match find_complete_minor(g, h, u64::MAX) {
        MinorSearch::Found { model } => Some(model),
        MinorSearch::Absent => None,
        MinorSearch::Unknown => unreachable!("unbudgeted search"),
    })
}

/// `K_h` minor search for any size: direct for `h <= 3`, greedy first,
/// then (up to 64 vertices) the exact search under a node budget.
pub fn find_complete_minor(g: &Graph, h: usize, budget: u64) -> MinorSearch {
    let n = g.vertex_count();
    match h {
        0 => return MinorSearch::Found { model: MinorModel::default() },
        1 => {
            return if n > 0 {
                MinorSearch::Found { model: MinorModel::new(vec![vec![0]]) }
            } else {
                MinorSearch::Absent
            }
        }
        2 => {
            return match g.edges().next() {
                Some((u, v)) => MinorSearch::Found { model: MinorModel::new(vec![vec![u], vec![v]]) },
                None => MinorSearch::Absent,
            }
        }
        3 => {
            return match find_cycle(g) {
                Some(c) => MinorSearch::Found { model: MinorModel::new(vec![vec![c[0]], vec![c[1]], c[2..].to_vec()]) },
                None => MinorSearch::Absent,
            }
        }
        _ => {}
    }
    if edge_bound(g) < h {
        return MinorSearch::Absent;
    }
    let greedy = greedy_minor(g);
    if greedy.order() >= h {
        let mut model = greedy;
        model.branch_sets.truncate(h);
        return MinorSearch::Found { model };
    }
    if n > 64 {
        return MinorSearch::Unknown;
    }
    search_all_components(g, h, budget)
}

fn search_all_components(g: &Graph, h: usize, budget: u64) -> MinorSearch {
    let mut unknown = false;
    for comp in g.components() {
        if comp.len() < h {
            continue;
        }
        let sub = g.induced_sorted(comp);
        let mut s = Search {
            adj: sub.graph.masks().expect("within mask width"),
            target: h,
            seen: HashSet::new(),
            nodes: 0,
            budget,
        };
        let start: Vec<u64> = (0..sub.graph.vertex_count()).map(|v| 1u64 << v).collect();
        match s.run(start) {
            Some(classes) => {
                let sets = classes.iter().map(|&c| sub.host_vertices(bits(c))).collect();
                return MinorSearch::Found { model: MinorModel::new(sets) };
            }
            None if s.nodes > s.budget => unknown = true,
            None => {}
        }
    }
    if unknown {
        MinorSearch::Unknown
    } else {
        MinorSearch::Absent
    }
}

struct Search {
    adj: Vec<u64>,
    target: usize,
    seen: HashSet<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn neighborhood(&self, class: u64) -> u64 {
        bits(class).fold(0, |m, v| m | self.adj[v]) & !class
    }

    /// Returns the classes of a `K_target` model if one is reachable.
    fn run(&mut self, classes: Vec<u64>) -> Option<Vec<u64>> {
        if self.nodes > self.budget || !self.seen.insert(classes.clone()) {
            return None;
        }
        self.nodes += 1;
        let q = classes.len();
        let nbhd: Vec<u64> = classes.iter().map(|&c| self.neighborhood(c)).collect();
        let qadj: Vec<u64> = (0..q)
            .map(|i| (0..q).filter(|&j| j != i && nbhd[i] & classes[j] != 0).fold(0u64, |m, j| m | 1 << j))
            .collect();
        let e: usize = qadj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2;
        if bound(q, e) < self.target {
            return None;
        }
        let clique = max_independent_set_within(&complement_masks(&qadj), full_mask(q));
        if clique.count_ones() as usize >= self.target {
            return Some(bits(clique).take(self.target).map(|i| classes[i]).collect());
        }
        let low = (0..q)
            .filter(|&i| (qadj[i].count_ones() as usize) < self.target - 1)
            .min_by_key(|&i| (qadj[i].count_ones(), i));
        let mut moves: Vec<(usize, usize)> = match low {
            Some(i) => bits(qadj[i]).map(|j| (i, j)).collect(),
            None => (0..q).flat_map(|i| bits(qadj[i]).filter(move |&j| j > i).map(move |j| (i, j))).collect(),
        };
        // contract edges with few common neighbours first: they lose fewest edges
        moves.sort_by_key(|&(i, j)| ((qadj[i] & qadj[j]).count_ones(), i.min(j), i.max(j)));
        for (i, j) in moves {
            let mut next = classes.clone();
            let merged = next[i] | next[j];
            let (lo, hi) = (i.min(j), i.max(j));
            next.remove(hi);
            next[lo] = merged;
            next.sort_unstable_by_key(|c| c.trailing_zeros());
            if let Some(found) = self.run(next) {
                return Some(found);
            }
        }
        None
    }
}

/// Largest `k <= q` with `C(k,2) + (q - k) <= e`.
fn bound(q: usize, e: usize) -> usize {
    (0..=q).rev().find(|&k| k * k.saturating_sub(1) / 2 + (q - k) <= e).unwrap_or(0)
}

/// Upper bound on the Hadwiger number from edge counts of components.
fn edge_bound(g: &Graph) -> usize {
    g.components()
        .iter()
        .map(|c| {
            let e = c.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
            bound(c.len(), e)
        })
        .max()
        .unwrap_or(0)
}

/// Contract a minimum-degree class into the neighbour sharing the fewest
/// neighbours with it until the quotient is complete, recording the best
/// greedy clique seen on the way.
fn greedy_minor(g: &Graph) -> MinorModel {
    let n = g.vertex_count();
    let mut members: Vec<Vec<Vertex>> = (0..n).map(|v| vec![v]).collect();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut best: Vec<Vec<Vertex>> = Vec::new();
    loop {
        let clique = greedy_clique(&adj, &alive);
        if clique.len() > best.len() {
            best = clique.iter().map(|&c| members[c].clone()).collect();
        }
        if alive.iter().all(|&c| adj[c].len() + 1 == alive.len()) {
            break;
        }
        let v = *alive.iter().min_by_key(|&&c| (adj[c].len(), c)).expect("non-empty");
        if adj[v].is_empty() {
            alive.remove(&v);
            continue;
        }
        let u = *adj[v]
            .iter()
            .min_by_key(|&&w| (adj[v].intersection(&adj[w]).count(), adj[w].len(), w))
            .expect("has neighbour");
        let moved = std::mem::take(&mut adj[v]);
        for w in moved {
            adj[w].remove(&v);
            if w != u {
                adj[w].insert(u);
                adj[u].insert(w);
            }
        }
        let taken = std::mem::take(&mut members[v]);
        members[u].extend(taken);
        alive.remove(&v);
    }
    MinorModel::new(best)
}

fn greedy_clique(adj: &[BTreeSet<usize>], alive: &BTreeSet<usize>) -> Vec<usize> {
    let mut order: Vec<usize> = alive.iter().copied().collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(adj[c].len()), c));
    let mut best = Vec::new();
    for &start in order.iter().take(8) {
        let mut clique = vec![start];
        for &c in &order {
            if c != start && clique.iter().all(|&d| adj[c].contains(&d)) {
                clique.push(c);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// Some cycle as a vertex sequence, if the graph has one.
fn find_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(u) {
                let w = g.neighbors(u)[*idx];
                *idx += 1;
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    stack.push((w, 0));
                } else if w != parent[u] && depth[w] < depth[u] {
                    let mut cycle = vec![u];
                    let mut x = u;
                    while x != w {
                        x = parent[x];
                        cycle.push(x);
                    }
                    return Some(cycle);
                }
            } else {
                stack.pop();
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::verify::check_minor_model;

    fn exact(g: &Graph) -> usize {
        let r = hadwiger_number(g).unwrap();
        assert!(check_minor_model(g, &r.model).is_empty(), "{:?}", r.model);
        assert_eq!(r.model.order(), r.h);
        r.h
    }

    #[test]
    fn examples() {
        assert_eq!(exact(&complete(5)), 5);
        assert_eq!(exact(&petersen()), 5);
        assert_eq!(exact(&cycle(9)), 3);
        assert_eq!(exact(&path(6)), 2);
        assert_eq!(exact(&Graph::empty(3)), 1);
        assert_eq!(exact(&Graph::empty(0)), 0);
        assert_eq!(exact(&complete_bipartite(3, 3)), 4);
        assert_eq!(exact(&hypercube(3)), 4);
        assert_eq!(exact(&wheel(6)), 4);
        assert_eq!(exact(&Graph::disjoint_union(&[complete(4), cycle(5)])), 4);
    }

    #[test]
    fn decision_and_refusal() {
        assert!(has_complete_minor(&petersen(), 6).unwrap().is_none());
        assert!(has_complete_minor(&petersen(), 5).unwrap().is_some());
        assert!(matches!(hadwiger_number(&path(13)), Err(OracleError::TooLarge { .. })));
        let b = hadwiger_bounds(&grid(5, 5));
        assert!(b.h >= 4 && b.h <= b.upper && !b.model.branch_sets.is_empty());
        assert!(check_minor_model(&grid(5, 5), &b.model).is_empty());
    }

    #[test]
    fn triangle_minor_is_a_cycle() {
        let g = cycle(70);
        match find_complete_minor(&g, 3, 10) {
            MinorSearch::Found { model } => assert!(check_minor_model(&g, &model).is_empty()),
            other => panic!("{other:?}"),
        }
        assert_eq!(find_complete_minor(&path(70), 3, 10), MinorSearch::Absent);
    }

    #[test]
    fn monotone_under_induced_subgraphs() {
        use crate::graph::generate::Family;
        for seed in 0..20 {
            let g = Family::Gnp { n: 9, p: 0.5 }.generate(seed).unwrap();
            let h = exact(&g);
            let sub: Vec<usize> = (0..9).filter(|v| (seed >> (v % 5)) & 1 == 0 || v % 2 == 0).collect();
            let hs = exact(&g.induced(&sub).unwrap().graph);
            assert!(hs <= h);
        }
    }
}
