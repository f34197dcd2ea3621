//! Vertex-disjoint paths by backtracking over chordless paths.
//!
//! Replacing each path of a linkage by a chordless path on a subset of its
//! vertices keeps the linkage valid, so enumerating chordless paths is
//! complete. At every level the unrouted pair with the fewest shortest paths
//! in the remaining graph is routed next; a pair whose terminals have been
//! cut apart ends the branch.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{bits, OracleError};
use crate::graph::{Graph, Vertex};
use crate::model::{terminals_well_formed, Linkage};

pub const PATHS_DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LinkageOutcome {
    Linked { linkage: Linkage },
    Infeasible,
    Unknown,
}

pub fn disjoint_paths(g: &Graph, pairs: &[(Vertex, Vertex)], budget: u64) -> Result<LinkageOutcome, OracleError> {
    let n = g.vertex_count();
    if n > 64 {
        return Err(super::too_large("disjoint_paths", n, 64));
    }
    if pairs.iter().any(|&(s, t)| s >= n || t >= n) {
        return Err(OracleError::InvalidArgument("terminal outside the vertex range".into()));
    }
    if !terminals_well_formed(pairs) {
        return Err(OracleError::InvalidArgument("terminal pairs overlap".into()));
    }
    let adj = g.masks().expect("within mask width");
    let mut found = None;
    let end = enumerate_linkages(&adj, pairs, 0, budget, &mut |paths| {
        found = Some(paths.to_vec());
        true
    });
    Ok(match (found, end) {
        (Some(paths), _) => LinkageOutcome::Linked { linkage: Linkage { pairs: pairs.to_vec(), paths } },
        (None, Enumeration::Exhausted) => LinkageOutcome::Infeasible,
        (None, _) => LinkageOutcome::Unknown,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Enumeration {
    Exhausted,
    Stopped,
    OutOfBudget,
}

/// Calls `visit` on linkages made of chordless paths avoiding `blocked`
/// until it returns true. Pairs must satisfy the terminal convention.
pub(crate) fn enumerate_linkages(
    adj: &[u64],
    pairs: &[(Vertex, Vertex)],
    blocked: u64,
    budget: u64,
    visit: &mut dyn FnMut(&[Vec<Vertex>]) -> bool,
) -> Enumeration {
    let terminals = pairs.iter().fold(0u64, |m, &(s, t)| m | 1 << s | 1 << t);
    if terminals & blocked != 0 {
        return Enumeration::Exhausted;
    }
    let mut e = Enumerator {
        adj,
        pairs,
        allowed: !blocked,
        routes: pairs.iter().map(|&(s, t)| (s == t).then(|| vec![s])).collect(),
        nodes: 0,
        budget,
        visit,
    };
    match e.level() {
        Flow::Continue => Enumeration::Exhausted,
        Flow::Stop => Enumeration::Stopped,
        Flow::Budget => Enumeration::OutOfBudget,
    }
}

#[derive(PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
    Budget,
}

struct Enumerator<'a> {
    adj: &'a [u64],
    pairs: &'a [(Vertex, Vertex)],
    allowed: u64,
    routes: Vec<Option<Vec<Vertex>>>,
    nodes: u64,
    budget: u64,
    visit: &'a mut dyn FnMut(&[Vec<Vertex>]) -> bool,
}

impl Enumerator<'_> {
    fn available_for(&self, i: usize) -> u64 {
        let mut avail = self.allowed;
        for (j, r) in self.routes.iter().enumerate() {
            match r {
                Some(p) => avail &= !p.iter().fold(0u64, |m, &v| m | 1 << v),
                None if j != i => avail &= !(1u64 << self.pairs[j].0 | 1u64 << self.pairs[j].1),
                None => {}
            }
        }
        avail
    }

    fn level(&mut self) -> Flow {
        let open: Vec<usize> = (0..self.pairs.len()).filter(|&i| self.routes[i].is_none()).collect();
        if open.is_empty() {
            let paths: Vec<Vec<Vertex>> = self.routes.iter().map(|r| r.clone().expect("routed")).collect();
            return if (self.visit)(&paths) { Flow::Stop } else { Flow::Continue };
        }
        let mut pick = None;
        for &i in &open {
            let (s, t) = self.pairs[i];
            let count = count_shortest(self.adj, self.available_for(i), s, t);
            if count == 0 {
                return Flow::Continue;
            }
            if pick.map_or(true, |(_, c)| count < c) {
                pick = Some((i, count));
            }
        }
        let (i, _) = pick.expect("open pair");
        let avail = self.available_for(i);
        let (s, t) = self.pairs[i];
        let dist = distances(self.adj, avail, t);
        let mut path = vec![s];
        self.extend(i, avail, &dist, &mut path, 1u64 << s)
    }

    fn extend(&mut self, i: usize, avail: u64, dist: &[u32], path: &mut Vec<Vertex>, on_path: u64) -> Flow {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Flow::Budget;
        }
        let u = *path.last().expect("non-empty");
        let t = self.pairs[i].1;
        if u == t {
            self.routes[i] = Some(path.clone());
            let f = self.level();
            self.routes[i] = None;
            return f;
        }
        let earlier = on_path & !(1u64 << u);
        let shadow = bits(earlier).fold(0u64, |m, v| m | self.adj[v]);
        let mut next: Vec<Vertex> = bits(self.adj[u] & avail & !on_path & !shadow).collect();
        next.sort_by_key(|&w| (dist[w], w));
        for w in next {
            if dist[w] == u32::MAX {
                continue;
            }
            // the rest of the path must avoid the neighbourhood of the path so far
            let region = avail & !(on_path | 1u64 << w) & !(shadow | self.adj[u]);
            if w != t && !reaches(self.adj, region | 1u64 << w, w, t) {
                continue;
            }
            path.push(w);
            let f = self.extend(i, avail, dist, path, on_path | 1u64 << w);
            path.pop();
            if f != Flow::Continue {
                return f;
            }
        }
        Flow::Continue
    }
}

fn distances(adj: &[u64], avail: u64, from: Vertex) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[from] = 0;
    let mut q = VecDeque::from([from]);
    while let Some(u) = q.pop_front() {
        for w in bits(adj[u] & avail) {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

fn reaches(adj: &[u64], region: u64, from: Vertex, to: Vertex) -> bool {
    let mut seen = 1u64 << from;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & region & !seen;
        if new >> to & 1 == 1 {
            return true;
        }
        seen |= new;
        frontier |= new;
    }
    false
}

/// Number of shortest `s`-`t` paths inside `avail` (saturating), 0 when
/// disconnected.
fn count_shortest(adj: &[u64], avail: u64, s: Vertex, t: Vertex) -> u64 {
    if s == t {
        return 1;
    }
    let mut count = vec![0u64; adj.len()];
    let mut dist = vec![u32::MAX; adj.len()];
    dist[s] = 0;
    count[s] = 1;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        if u == t {
            break;
        }
        for w in bits(adj[u] & avail) {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
            if dist[w] == dist[u] + 1 {
                count[w] = count[w].saturating_add(count[u]);
            }
        }
    }
    count[t]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::verify::check_linkage;

    fn run(g: &Graph, pairs: &[(usize, usize)]) -> LinkageOutcome {
        let r = disjoint_paths(g, pairs, PATHS_DEFAULT_BUDGET).unwrap();
        if let LinkageOutcome::Linked { linkage } = &r {
            assert!(check_linkage(g, linkage).is_empty());
        }
        r
    }

    #[test]
    fn examples() {
        let r = run(&complete(4), &[(0, 2), (1, 3)]);
        assert_eq!(
            r,
            LinkageOutcome::Linked {
                linkage: Linkage { pairs: vec![(0, 2), (1, 3)], paths: vec![vec![0, 2], vec![1, 3]] }
            }
        );
        assert_eq!(run(&cycle(4), &[(0, 2), (1, 3)]), LinkageOutcome::Infeasible);
        assert_eq!(run(&grid(4, 4), &[(0, 15), (3, 12)]), LinkageOutcome::Infeasible);
        assert!(matches!(run(&grid(4, 4), &[(0, 3), (12, 15)]), LinkageOutcome::Linked { .. }));
    }

    #[test]
    fn trivial_pairs_and_errors() {
        assert!(matches!(run(&path(3), &[(1, 1), (0, 0)]), LinkageOutcome::Linked { .. }));
        assert_eq!(run(&path(3), &[(1, 1), (0, 2)]), LinkageOutcome::Infeasible);
        assert!(disjoint_paths(&path(3), &[(0, 1), (0, 2)], 10).is_err());
    }

    #[test]
    fn budget_gives_unknown() {
        assert_eq!(disjoint_paths(&grid(6, 6), &[(0, 35), (5, 30)], 3).unwrap(), LinkageOutcome::Unknown);
    }

    #[test]
    fn agrees_with_flow_for_single_pairs_and_brute_force_for_two() {
        use crate::graph::generate::Family;
        for seed in 0..40 {
            let g = Family::Gnp { n: 8, p: 0.3 }.generate(seed).unwrap();
            let linked = matches!(run(&g, &[(0, 7), (1, 6)]), LinkageOutcome::Linked { .. });
            // brute force: try every pair of vertex sets as path interiors
            let adj = g.masks().unwrap();
            let connected = |set: u64, a: usize, b: usize| reaches(&adj, set, a, b);
            let inner = 0b0011_1100u64;
            let mut brute = false;
            for x in 0u64..16 {
                let a = (x << 2) & inner;
                let rest = inner & !a;
                if connected(a | 1 | 1 << 7, 0, 7) && connected(rest | 1 << 1 | 1 << 6, 1, 6) {
                    brute = true;
                }
            }
            assert_eq!(linked, brute, "seed {seed}");
        }
    }
}
