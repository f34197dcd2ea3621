//! Vertex connectivity and Menger linkages by unit-capacity max-flow on the
//! split graph (`v_in -> v_out` with capacity one).

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

const INF: i32 = i32::MAX / 4;

struct Dinic {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i32>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Self { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new(), level: Vec::new(), iter: Vec::new() }
    }

    fn add(&mut self, u: usize, v: usize, c: i32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn bfs(&mut self, s: usize) {
        self.level = vec![-1; self.head.len()];
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, f: i32) -> i32 {
        if u == t {
            return f;
        }
        while self.iter[u] < self.head[u].len() {
            let e = self.head[u][self.iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, f.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    /// Max flow, stopping once `limit` is reached.
    fn run(&mut self, s: usize, t: usize, limit: i32) -> i32 {
        let mut flow = 0;
        while flow < limit {
            self.bfs(s);
            if self.level[t] < 0 {
                break;
            }
            self.iter = vec![0; self.head.len()];
            loop {
                let f = self.dfs(s, t, limit - flow);
                if f == 0 {
                    break;
                }
                flow += f;
                if flow >= limit {
                    break;
                }
            }
        }
        flow
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Split network: node `2v` is `v_in`, `2v+1` is `v_out`; two extra nodes
/// at the end serve as super source and sink.
fn split_network(g: &Graph, vertex_cap: impl Fn(Vertex) -> i32) -> Dinic {
    let n = g.vertex_count();
    let mut d = Dinic::new(2 * n + 2);
    for v in 0..n {
        d.add(2 * v, 2 * v + 1, vertex_cap(v));
        for &w in g.neighbors(v) {
            d.add(2 * v + 1, 2 * w, INF);
        }
    }
    d
}

fn cut_vertices(d: &Dinic, source: usize, n: usize) -> Vec<Vertex> {
    let seen = d.reachable(source);
    (0..n).filter(|&v| seen[2 * v] && !seen[2 * v + 1]).collect()
}

/// Maximum number of internally disjoint `s`-`t` paths for non-adjacent
/// `s != t`, capped at `limit`, with a minimum separator when below the cap.
pub fn local_connectivity(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> (usize, Option<Vec<Vertex>>) {
    assert!(s != t && !g.has_edge(s, t), "local connectivity needs non-adjacent distinct ends");
    let n = g.vertex_count();
    let mut d = split_network(g, |v| if v == s || v == t { INF } else { 1 });
    let flow = d.run(2 * s + 1, 2 * t, limit.min(INF as usize) as i32) as usize;
    if flow < limit {
        (flow, Some(cut_vertices(&d, 2 * s + 1, n)))
    } else {
        (flow, None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    pub kappa: usize,
    /// A separator of size `kappa`; `None` for complete graphs, whose
    /// connectivity `n - 1` is witnessed by adjacency alone.
    pub separator: Option<Vec<Vertex>>,
}

/// `κ(G)` by Even's schedule: only pairs `(i, j)` with `i <= κ_best` and
/// `j > i` non-adjacent are tried, since some minimum separator misses one
/// of the first `κ + 1` vertices.
pub fn vertex_connectivity(g: &Graph) -> Connectivity {
    let n = g.vertex_count();
    if n <= 1 {
        return Connectivity { kappa: 0, separator: if n == 0 { None } else { Some(Vec::new()) } };
    }
    if !g.is_connected() {
        return Connectivity { kappa: 0, separator: Some(Vec::new()) };
    }
    if g.is_complete() {
        return Connectivity { kappa: n - 1, separator: None };
    }
    let mut best = n - 1;
    let mut sep = None;
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            let (k, cut) = local_connectivity(g, i, j, best);
            if k < best {
                best = k;
                sep = cut;
            }
        }
        i += 1;
    }
    // a non-adjacent pair has local connectivity at most n - 2, so the
    // first flow already lowered `best` and recorded a cut
    Connectivity { kappa: best, separator: sep }
}

/// Whether `κ(G) ≥ k`, with flows capped at `k`. A separator of fewer
/// than `k` vertices misses one of the first `k` vertices, so only pairs
/// with the smaller index below `k` are tried.
pub fn connectivity_at_least(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    if k == 0 {
        return true;
    }
    if n <= k {
        return false;
    }
    for i in 0..k {
        for j in i + 1..n {
            if !g.has_edge(i, j) && local_connectivity(g, i, j, k).0 < k {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MengerLinkage {
    /// Pairwise vertex-disjoint `A`-`B` paths: each starts in `A`, ends in
    /// `B`, and has no other vertex in `A ∪ B`.
    pub paths: Vec<Vec<Vertex>>,
    /// A minimum `A`-`B` separator, `|separator| = |paths|`.
    pub separator: Vec<Vertex>,
}

/// Maximum set of disjoint `A`-`B` paths with a matching separator.
/// Vertices in `A ∩ B` give one-vertex paths.
pub fn menger(g: &Graph, a: &[Vertex], b: &[Vertex]) -> MengerLinkage {
    menger_avoiding(g, a, b, &[])
}

/// As [`menger`], inside `G - avoid`.
pub fn menger_avoiding(g: &Graph, a: &[Vertex], b: &[Vertex], avoid: &[Vertex]) -> MengerLinkage {
    let n = g.vertex_count();
    let mut blocked = vec![false; n];
    for &v in avoid {
        blocked[v] = true;
    }
    let mut d = split_network(g, |v| i32::from(!blocked[v]));
    let (src, sink) = (2 * n, 2 * n + 1);
    let mut in_a = vec![false; n];
    let mut in_b = vec![false; n];
    for &v in a {
        in_a[v] = true;
    }
    for &v in b {
        in_b[v] = true;
    }
    for v in 0..n {
        if in_a[v] {
            d.add(src, 2 * v, INF);
        }
        if in_b[v] {
            d.add(2 * v + 1, sink, INF);
        }
    }
    let flow = d.run(src, sink, INF) as usize;
    let separator = cut_vertices(&d, src, n);
    let mut paths = Vec::with_capacity(flow);
    // walk saturated arcs out of the source; flow on `v_out -> w_in` shows
    // as positive capacity on the reverse arc
    let mut used = vec![false; d.to.len()];
    for &e0 in &d.head[src] {
        if e0 % 2 == 1 || d.cap[e0 ^ 1] == 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = d.to[e0] / 2;
        loop {
            path.push(v);
            let out = 2 * v + 1;
            let next = d.head[out]
                .iter()
                .copied()
                .find(|&e| e % 2 == 0 && !used[e] && d.cap[e ^ 1] > 0 && (d.to[e] == sink || d.to[e] % 2 == 0));
            let Some(e) = next else { break };
            used[e] = true;
            if d.to[e] == sink {
                break;
            }
            v = d.to[e] / 2;
        }
        paths.push(trim(path, &in_a, &in_b));
    }
    debug_assert_eq!(paths.len(), flow);
    debug_assert_eq!(separator.len(), flow);
    MengerLinkage { paths, separator }
}

/// Shortest subpath starting in `A` and ending at the first `B` vertex.
fn trim(path: Vec<Vertex>, in_a: &[bool], in_b: &[bool]) -> Vec<Vertex> {
    let end = path.iter().position(|&v| in_b[v]).expect("flow path ends in B");
    let start = path[..=end].iter().rposition(|&v| in_a[v]).expect("flow path starts in A");
    path[start..=end].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::verify::{separates, separates_sets};

    fn brute_kappa(g: &Graph) -> usize {
        let n = g.vertex_count();
        if g.is_complete() {
            return n.saturating_sub(1);
        }
        (0u32..1 << n)
            .filter(|&m| {
                let sep: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
                separates(g, &sep)
            })
            .map(u32::count_ones)
            .min()
            .unwrap() as usize
    }

    #[test]
    fn examples() {
        assert_eq!(vertex_connectivity(&complete(5)), Connectivity { kappa: 4, separator: None });
        let p = vertex_connectivity(&petersen());
        assert_eq!(p.kappa, 3);
        assert!(separates(&petersen(), p.separator.as_ref().unwrap()));
        let two = Graph::disjoint_union(&[complete(3), complete(3)]);
        assert_eq!(vertex_connectivity(&two), Connectivity { kappa: 0, separator: Some(vec![]) });
        assert_eq!(vertex_connectivity(&Graph::empty(1)).kappa, 0);
        assert_eq!(vertex_connectivity(&cycle(7)).kappa, 2);
        assert_eq!(vertex_connectivity(&hypercube(3)).kappa, 3);
    }

    #[test]
    fn flow_matches_separator_enumeration() {
        use crate::graph::generate::Family;
        for seed in 0..80 {
            let g = Family::Gnp { n: 9, p: [0.3, 0.5, 0.7, 0.9][seed as usize % 4] }.generate(seed).unwrap();
            let c = vertex_connectivity(&g);
            assert_eq!(c.kappa, brute_kappa(&g), "seed {seed}");
            for k in 0..6 {
                assert_eq!(connectivity_at_least(&g, k), c.kappa >= k && g.vertex_count() > k);
            }
            if let Some(sep) = c.separator {
                assert_eq!(sep.len(), c.kappa);
                assert!(separates(&g, &sep));
            }
        }
    }

    #[test]
    fn menger_sets() {
        let g = grid(3, 4);
        let a = [0, 4, 8];
        let b = [3, 7, 11];
        let m = menger(&g, &a, &b);
        assert_eq!(m.paths.len(), 3);
        assert!(separates_sets(&g, &a, &b, &m.separator));
        let m = menger(&g, &[0, 1], &[1, 11]);
        assert_eq!(m.paths.len(), 2);
        assert!(m.paths.contains(&vec![1]));
        let star = complete_bipartite(1, 4);
        let m = menger(&star, &[1, 2], &[3, 4]);
        assert_eq!((m.paths.len(), m.separator.clone()), (1, vec![0]));
    }
}
