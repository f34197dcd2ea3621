//! Peeling to a subset with large minimum degree in which every vertex keeps
//! a fixed fraction of its degree.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeelError {
    #[error("r must exceed 2 and delta must be positive (got r = {r}, delta = {delta})")]
    BadParameters { r: Rational, delta: Rational },
    #[error("vertex {0} is outside the graph")]
    VertexOutOfRange(Vertex),
    #[error("precondition fails: (r-2)e(G[S]) = {lhs} is not above (r-1)delta|S| + e(S, V-S) = {rhs}")]
    Precondition { lhs: Rational, rhs: Rational },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeelReason {
    /// Fewer than `delta` neighbours left in the subset.
    MinDegree,
    /// Fewer than `deg(v)/r` neighbours left in the subset.
    Proportion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    pub vertex: Vertex,
    pub reason: PeelReason,
    #[serde(with = "crate::rational_serde")]
    pub potential: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialSubset {
    pub subset: Vec<Vertex>,
    /// Potential of the input set.
    #[serde(with = "crate::rational_serde")]
    pub initial_potential: Rational,
    /// Deletions in order, each with the potential after it.
    pub steps: Vec<PeelStep>,
}

/// Both sides of the peeling inequality:
/// `((r-2)·e(G[S]), (r-1)·δ·|S| + e(S, V∖S))`.
fn peel_sides(g: &Graph, set: &[Vertex], r: Rational, delta: Rational) -> (Rational, Rational) {
    let mut inside = vec![false; g.vertex_count()];
    for &v in set {
        inside[v] = true;
    }
    let (mut internal, mut cross) = (0i64, 0i64);
    for &v in set {
        for &w in g.neighbors(v) {
            if inside[w] {
                internal += 1;
            } else {
                cross += 1;
            }
        }
    }
    (
        (r - 2) * Rational::from_integer(internal / 2),
        (r - 1) * delta * Rational::from_integer(set.len() as i64) + Rational::from_integer(cross),
    )
}

/// `(r-2)·e(G[S]) - (r-1)·δ·|S| - e(S, V∖S)`.
pub fn peel_potential(g: &Graph, set: &[Vertex], r: Rational, delta: Rational) -> Rational {
    let (lhs, rhs) = peel_sides(g, set, r, delta);
    lhs - rhs
}

/// Repeatedly deletes the smallest-index vertex of `S` violating either
/// `|N(v) ∩ S'| ≥ δ` or `|N(v) ∩ S'| ≥ deg(v)/r`. Each deletion raises the
/// potential, so a positive start ends at a non-empty set.
pub fn special_subset(g: &Graph, set: &[Vertex], r: Rational, delta: Rational) -> Result<SpecialSubset, PeelError> {
    let zero = Rational::from_integer(0);
    if r <= Rational::from_integer(2) || delta <= zero {
        return Err(PeelError::BadParameters { r, delta });
    }
    let n = g.vertex_count();
    if let Some(&v) = set.iter().find(|&&v| v >= n) {
        return Err(PeelError::VertexOutOfRange(v));
    }
    let mut members: Vec<Vertex> = set.to_vec();
    members.sort_unstable();
    members.dedup();
    let (lhs, rhs) = peel_sides(g, &members, r, delta);
    if lhs <= rhs {
        return Err(PeelError::Precondition { lhs, rhs });
    }
    let potential = lhs - rhs;

    let mut inside = vec![false; n];
    for &v in &members {
        inside[v] = true;
    }
    let mut inner: Vec<i64> = (0..n).map(|v| g.neighbors(v).iter().filter(|&&w| inside[w]).count() as i64).collect();
    let violates = |v: Vertex, inner: &[i64]| -> Option<PeelReason> {
        let d = Rational::from_integer(inner[v]);
        if d < delta {
            Some(PeelReason::MinDegree)
        } else if d * r < Rational::from_integer(g.degree(v) as i64) {
            Some(PeelReason::Proportion)
        } else {
            None
        }
    };
    let mut queue: BTreeSet<Vertex> = members.iter().copied().filter(|&v| violates(v, &inner).is_some()).collect();
    let mut steps = Vec::new();
    let mut current = potential;
    while let Some(v) = queue.pop_first() {
        let Some(reason) = violates(v, &inner) else { continue };
        // change in potential: (r-1)δ + deg(v) - r·|N(v) ∩ S'|
        let next = current + (r - 1) * delta + Rational::from_integer(g.degree(v) as i64)
            - r * Rational::from_integer(inner[v]);
        debug_assert!(next > current, "peeling lowered the potential");
        current = next;
        inside[v] = false;
        for &w in g.neighbors(v) {
            inner[w] -= 1;
            if inside[w] && violates(w, &inner).is_some() {
                queue.insert(w);
            }
        }
        steps.push(PeelStep { vertex: v, reason, potential: current });
    }
    let subset: Vec<Vertex> = members.into_iter().filter(|&v| inside[v]).collect();
    debug_assert!(!subset.is_empty());
    Ok(SpecialSubset { subset, initial_potential: potential, steps })
}

/// Clause check used by tests and the harness: min degree of `G[S']` at
/// least `δ` and `|N(v) ∩ S'| ≥ deg(v)/r` for every `v ∈ S'`.
pub fn satisfies_special_clauses(g: &Graph, subset: &[Vertex], r: Rational, delta: Rational) -> bool {
    let mut inside = vec![false; g.vertex_count()];
    for &v in subset {
        inside[v] = true;
    }
    subset.iter().all(|&v| {
        let d = g.neighbors(v).iter().filter(|&&w| inside[w]).count() as i64;
        Rational::from_integer(d) >= delta
            && Rational::from_integer(d) * r >= Rational::from_integer(g.degree(v) as i64)
    })
}

/// A seeded `(G, S, r, δ)` on at most `max_n` vertices (`max_n >= 12`)
/// for which the peeling precondition holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialInstance {
    pub graph: Graph,
    pub set: Vec<Vertex>,
    pub r: Rational,
    pub delta: Rational,
}

/// `S` is a random pocket denser than its surroundings; `δ` is a random
/// fraction of the largest value the precondition allows.
pub fn special_instance(seed: u64, max_n: usize) -> SpecialInstance {
    assert!(max_n >= 12, "max_n must be at least 12");
    const RS: [(i64, i64); 6] = [(5, 2), (3, 1), (7, 2), (4, 1), (5, 1), (6, 1)];
    const FRACTIONS: [(i64, i64); 5] = [(1, 10), (1, 4), (1, 2), (3, 4), (19, 20)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(12..=max_n);
        let s = rng.gen_range(6..=n.min(40));
        let p_in: f64 = rng.gen_range(0.3..0.9);
        let p_out: f64 = rng.gen_range(0.01..0.15);
        let mut order: Vec<Vertex> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut set = order[..s].to_vec();
        set.sort_unstable();
        let mut inside = vec![false; n];
        for &v in &set {
            inside[v] = true;
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let p = if inside[u] && inside[v] { p_in } else { p_out };
                if rng.gen::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        let graph = Graph::build(n, &edges).expect("in range");
        let (rn, rd) = RS[rng.gen_range(0..RS.len())];
        let r = Rational::new(rn, rd);
        let (lhs, cross) = peel_sides(&graph, &set, r, Rational::from_integer(0));
        let room = lhs - cross;
        if room <= Rational::from_integer(0) {
            continue;
        }
        let (fn_, fd) = FRACTIONS[rng.gen_range(0..FRACTIONS.len())];
        let delta = room / ((r - 1) * Rational::from_integer(s as i64)) * Rational::new(fn_, fd);
        return SpecialInstance { graph, set, r, delta };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn examples() {
        let k6 = complete(6);
        let all: Vec<usize> = (0..6).collect();
        let out = special_subset(&k6, &all, q(3, 1), q(1, 1)).unwrap();
        assert_eq!(out.subset, all);
        assert!(out.steps.is_empty());

        let pendant = Graph::build(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let out = special_subset(&pendant, &[0, 1, 2, 3], q(3, 1), q(1, 2)).unwrap();
        assert!(!out.subset.is_empty());
        assert!(satisfies_special_clauses(&pendant, &out.subset, q(3, 1), q(1, 2)));

        let err = special_subset(&cycle(6), &all, q(3, 1), q(1, 1)).unwrap_err();
        assert_eq!(err, PeelError::Precondition { lhs: q(6, 1), rhs: q(12, 1) });
    }

    #[test]
    fn potential_increases_along_the_trace() {
        use crate::graph::generate::Family;
        for seed in 0..200 {
            let g = Family::Gnp { n: 30, p: 0.3 }.generate(seed).unwrap();
            let set: Vec<usize> = (0..30).filter(|v| (v * 7 + seed as usize) % 3 != 0).collect();
            let (r, delta) = (q(5, 2), q(1, 1));
            let Ok(out) = special_subset(&g, &set, r, delta) else { continue };
            assert!(satisfies_special_clauses(&g, &out.subset, r, delta));
            let mut alive = set.clone();
            let mut last = out.initial_potential;
            for step in &out.steps {
                alive.retain(|&v| v != step.vertex);
                let direct = peel_potential(&g, &alive, r, delta);
                assert_eq!(direct, step.potential);
                assert!(direct > last);
                last = direct;
            }
        }
    }

    #[test]
    fn generated_instances_meet_the_precondition() {
        for seed in 0..100 {
            let i = special_instance(seed, 100);
            assert!(i.graph.vertex_count() <= 100);
            assert!(peel_potential(&i.graph, &i.set, i.r, i.delta) > Rational::from_integer(0));
            let out = special_subset(&i.graph, &i.set, i.r, i.delta).unwrap();
            assert!(satisfies_special_clauses(&i.graph, &out.subset, i.r, i.delta));
        }
    }
}
