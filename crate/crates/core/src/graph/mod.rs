//! Simple undirected graphs on dense vertex indices `0..n`.
//!
//! A [`Graph`] is immutable once built. Every extraction (induced subgraph,
//! bipartite subgraph, contraction quotient) carries a back-mapping so that
//! results can always be reported in host coordinates.

mod contract;
mod degeneracy;
pub mod dimacs;
pub mod generate;
pub mod graph6;

pub use contract::{contract, ContractionMap};
pub use degeneracy::{degeneracy_coloring, DegeneracyColoring};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge #{index} ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { index: usize, u: usize, v: usize, n: usize },
    #[error("edge #{index} is a self-loop on vertex {v}")]
    SelfLoop { index: usize, v: usize },
    #[error("density is undefined for the empty graph")]
    EmptyGraph,
    #[error("vertex {v} is outside 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("vertex {0} appears in both sides of a bipartite split")]
    OverlappingSides(usize),
    #[error("part {part} does not induce a connected subgraph")]
    DisconnectedPart { part: usize },
    #[error("part {part} is empty")]
    EmptyPart { part: usize },
    #[error("vertex {vertex} appears in more than one part")]
    OverlappingParts { vertex: usize },
}

/// Immutable simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

/// Elementary numeric quantities of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quantities {
    pub vertices: usize,
    pub edges: usize,
    #[serde(with = "crate::rational_serde")]
    pub density: Rational,
    pub min_degree: usize,
    pub max_degree: usize,
    pub degree_sequence: Vec<usize>,
}

/// A graph extracted from a host, together with the host index of each of
/// its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub to_host: Vec<Vertex>,
}

impl Subgraph {
    pub fn host_vertices(&self, local: impl IntoIterator<Item = Vertex>) -> Vec<Vertex> {
        local.into_iter().map(|v| self.to_host[v]).collect()
    }
}

impl Graph {
    /// Builds a graph from an edge list, deduplicating parallel pairs.
    ///
    /// Rejects self-loops and endpoints outside `0..n`, naming the index of
    /// the offending pair.
    pub fn build(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for (index, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { index, u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { index, v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adj))
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n], edge_count: 0 }
    }

    /// Sorts and deduplicates raw neighbor lists. Callers guarantee symmetry
    /// and absence of loops.
    pub(crate) fn from_raw_adjacency(mut adj: Vec<Vec<Vertex>>) -> Self {
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        debug_assert!(twice % 2 == 0);
        Self { adj, edge_count: twice / 2 }
    }

    /// Builds from per-vertex neighbor bitmasks (`n <= 64`).
    pub fn from_masks(masks: &[u64]) -> Self {
        let adj = masks.iter().map(|&m| BitIter(m).collect::<Vec<_>>()).collect();
        Self::from_raw_adjacency(adj)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `e(G)/v(G)` as an exact rational.
    pub fn density(&self) -> Result<Rational, GraphError> {
        if self.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        Ok(Rational::new(self.edge_count as i64, self.vertex_count() as i64))
    }

    pub fn quantities(&self) -> Result<Quantities, GraphError> {
        Ok(Quantities {
            vertices: self.vertex_count(),
            edges: self.edge_count,
            density: self.density()?,
            min_degree: self.min_degree(),
            max_degree: self.max_degree(),
            degree_sequence: self.adj.iter().map(Vec::len).collect(),
        })
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    /// Neighbor bitmasks; `None` when the graph has more than 64 vertices.
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.vertex_count() > 64 {
            return None;
        }
        Some(self.adj.iter().map(|l| l.iter().fold(0u64, |m, &v| m | (1 << v))).collect())
    }

    fn check_vertices(&self, set: &[Vertex]) -> Result<(), GraphError> {
        let n = self.vertex_count();
        match set.iter().find(|&&v| v >= n) {
            Some(&v) => Err(GraphError::VertexOutOfRange { v, n }),
            None => Ok(()),
        }
    }

    /// `G[A]`, relabelled in increasing host order.
    pub fn induced(&self, set: &[Vertex]) -> Result<Subgraph, GraphError> {
        self.check_vertices(set)?;
        let mut to_host = set.to_vec();
        to_host.sort_unstable();
        to_host.dedup();
        Ok(self.induced_sorted(to_host))
    }

    pub(crate) fn induced_sorted(&self, to_host: Vec<Vertex>) -> Subgraph {
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in to_host.iter().enumerate() {
            local[v] = i;
        }
        let adj = to_host
            .iter()
            .map(|&v| self.adj[v].iter().filter_map(|&w| (local[w] != usize::MAX).then_some(local[w])).collect())
            .collect();
        Subgraph { graph: Self::from_raw_adjacency(adj), to_host }
    }

    /// `G(A, B)`: vertices `A ∪ B` (A first, then B, each sorted) keeping only
    /// edges with one end in each side.
    pub fn bipartite(&self, a: &[Vertex], b: &[Vertex]) -> Result<Subgraph, GraphError> {
        self.check_vertices(a)?;
        self.check_vertices(b)?;
        let mut side = vec![0u8; self.vertex_count()];
        let mut to_host = Vec::with_capacity(a.len() + b.len());
        let mut a_sorted = a.to_vec();
        a_sorted.sort_unstable();
        a_sorted.dedup();
        let mut b_sorted = b.to_vec();
        b_sorted.sort_unstable();
        b_sorted.dedup();
        for &v in &a_sorted {
            side[v] = 1;
            to_host.push(v);
        }
        for &v in &b_sorted {
            if side[v] == 1 {
                return Err(GraphError::OverlappingSides(v));
            }
            side[v] = 2;
            to_host.push(v);
        }
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in to_host.iter().enumerate() {
            local[v] = i;
        }
        let adj = to_host
            .iter()
            .map(|&v| self.adj[v].iter().filter(|&&w| side[w] != 0 && side[w] != side[v]).map(|&w| local[w]).collect())
            .collect();
        Ok(Subgraph { graph: Self::from_raw_adjacency(adj), to_host })
    }

    /// `G - X`.
    pub fn without(&self, removed: &[Vertex]) -> Subgraph {
        let mut gone = vec![false; self.vertex_count()];
        for &v in removed {
            if v < gone.len() {
                gone[v] = true;
            }
        }
        let keep = self.vertices().filter(|&v| !gone[v]).collect();
        self.induced_sorted(keep)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_within(&vec![true; self.vertex_count()])
    }

    /// Components of the subgraph induced by vertices with `alive[v]`.
    pub fn components_within(&self, alive: &[bool]) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if !alive[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// Whether `set` induces a connected (non-empty) subgraph.
    pub fn is_connected_set(&self, set: &[Vertex]) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut alive = vec![false; self.vertex_count()];
        for &v in set {
            alive[v] = true;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![set[0]];
        seen[set[0]] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        let distinct = {
            let mut s = set.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        count == distinct
    }

    /// Disjoint union, relabelling each operand consecutively.
    pub fn disjoint_union(parts: &[Graph]) -> Graph {
        let mut adj = Vec::new();
        for g in parts {
            let offset = adj.len();
            adj.extend(g.adj.iter().map(|l| l.iter().map(|&v| v + offset).collect()));
        }
        Self::from_raw_adjacency(adj)
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u && !self.has_edge(u, v)).collect()).collect();
        Self::from_raw_adjacency(adj)
    }

    /// Checks structural invariants: symmetry, no loops, sorted unique lists,
    /// and the handshake identity.
    pub fn check_invariants(&self) -> bool {
        let mut twice = 0;
        for (u, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in list {
                if v == u || v >= self.adj.len() || !self.has_edge(v, u) {
                    return false;
                }
            }
            twice += list.len();
        }
        twice == 2 * self.edge_count
    }

    /// Whether `G[set]` is bipartite (two-colorable).
    pub fn is_bipartite_within(&self, set: &[Vertex]) -> bool {
        let mut color = vec![u8::MAX; self.vertex_count()];
        let mut alive = vec![false; self.vertex_count()];
        for &v in set {
            alive[v] = true;
        }
        for &s in set {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !alive[w] {
                        continue;
                    }
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        stack.push(w);
                    } else if color[w] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// BFS distances from a set of sources (`usize::MAX` = unreachable),
    /// restricted to vertices with `alive[v]`.
    pub fn bfs_distances(&self, sources: &[Vertex], alive: &[bool]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if alive[s] && dist[s] == usize::MAX {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if alive[w] && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Iterates the set bits of a `u64`, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// Common named graphs used by examples, tests and the catalog.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::build(n, &edges).expect("valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::build(n, &edges).expect("valid")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::build(n, &edges).expect("valid")
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::build(10, &edges).expect("valid")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges: Vec<_> = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))).collect();
        Graph::build(a + b, &edges).expect("valid")
    }

    /// Hub `0` joined to a rim cycle on `1..=rim`.
    pub fn wheel(rim: usize) -> Graph {
        let mut edges: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
        edges.extend((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
        Graph::build(rim + 1, &edges).expect("valid")
    }

    /// `rows x cols` grid; vertex `(r, c)` has index `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Graph {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::build(rows * cols, &edges).expect("valid")
    }

    /// Cliques of the given sizes all sharing vertex `0`.
    pub fn shared_vertex_cliques(sizes: &[usize]) -> Graph {
        let mut edges = Vec::new();
        let mut next = 1;
        for &s in sizes {
            let members: Vec<usize> = std::iter::once(0).chain(next..next + s.saturating_sub(1)).collect();
            next += s.saturating_sub(1);
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    edges.push((u, v));
                }
            }
        }
        Graph::build(next, &edges).expect("valid")
    }

    /// The `d`-dimensional hypercube.
    pub fn hypercube(d: usize) -> Graph {
        let n = 1usize << d;
        let edges: Vec<_> =
            (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b)))).filter(|&(u, v)| u < v).collect();
        Graph::build(n, &edges).expect("valid")
    }

    /// Circulant graph on `n` vertices with the given jumps.
    pub fn circulant(n: usize, jumps: &[usize]) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for &j in jumps {
                let k = (i + j) % n;
                if k != i {
                    edges.push((i, k));
                }
            }
        }
        Graph::build(n, &edges).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn build_examples() {
        let c5 = cycle(5);
        assert_eq!(c5.edge_count(), 5);
        assert_eq!(c5.density().unwrap(), Rational::from_integer(1));
        let k1 = Graph::build(1, &[]).unwrap();
        assert_eq!(k1.edge_count(), 0);
        let k5 = complete(5);
        assert_eq!(k5.density().unwrap(), Rational::from_integer(2));
    }

    #[test]
    fn build_rejects_bad_pairs() {
        assert_eq!(
            Graph::build(3, &[(0, 1), (1, 3)]),
            Err(GraphError::EndpointOutOfRange { index: 1, u: 1, v: 3, n: 3 })
        );
        assert_eq!(Graph::build(3, &[(2, 2)]), Err(GraphError::SelfLoop { index: 0, v: 2 }));
    }

    #[test]
    fn build_deduplicates() {
        let g = Graph::build(3, &[(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.check_invariants());
    }

    #[test]
    fn quantities_examples() {
        let q = complete(5).quantities().unwrap();
        assert_eq!(q.density, Rational::from_integer(2));
        let q = cycle(5).quantities().unwrap();
        assert_eq!((q.density, q.min_degree), (Rational::from_integer(1), 2));
        let g = shared_vertex_cliques(&[4, 4]);
        assert_eq!((g.vertex_count(), g.edge_count()), (7, 12));
        assert_eq!(g.density().unwrap(), Rational::new(12, 7));
        assert_eq!(Graph::empty(0).density(), Err(GraphError::EmptyGraph));
    }

    #[test]
    fn induced_and_bipartite_examples() {
        let k5 = complete(5);
        let k3 = k5.induced(&[0, 1, 2]).unwrap();
        assert_eq!(k3.graph, complete(3));
        let c4 = k5.bipartite(&[0, 1], &[2, 3]).unwrap();
        assert_eq!(c4.graph.edge_count(), 4);
        assert!(c4.graph.vertices().all(|v| c4.graph.degree(v) == 2));
        assert!(!c4.graph.has_edge(0, 1));
        let pair = cycle(5).bipartite(&[0], &[2]).unwrap();
        assert_eq!((pair.graph.vertex_count(), pair.graph.edge_count()), (2, 0));
        assert_eq!(k5.bipartite(&[0, 1], &[1, 2]).unwrap_err(), GraphError::OverlappingSides(1));
    }

    #[test]
    fn components_and_connectivity() {
        let g = Graph::disjoint_union(&[complete(3), complete(3)]);
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(!g.is_connected());
        assert!(g.is_connected_set(&[3, 4]));
        assert!(!g.is_connected_set(&[2, 3]));
    }
}
