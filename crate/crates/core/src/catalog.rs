//! Isomorph-free graph catalogs.
//!
//! Canonical forms use colour refinement plus individualization: the
//! leaf orderings of the search tree are compared by their upper-triangle
//! adjacency codes and the largest wins. Colours are ranks of sorted
//! signatures, so the whole procedure is independent of vertex labels.
//! Graphs on `n` vertices are produced from all graphs on `n - 1` by adding
//! a vertex with every possible neighbourhood and keeping one copy of each
//! canonical code.

use std::collections::HashSet;

use crate::graph::{named, Graph, Vertex};

/// Largest order handled by [`canonical_code`] (the code must fit in 64
/// bits).
pub const CANONICAL_LIMIT: usize = 11;

/// Largest order of the exhaustive generator.
pub const EXHAUSTIVE_LIMIT: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: Graph,
}

fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    // pairs (0,1), (0,2), ..., (n-2,n-1) from the most significant bit down
    let before = i * n - i * (i + 1) / 2 + (j - i - 1);
    (n * (n - 1) / 2 - 1 - before) as u32
}

fn code_of(adj: &[u64], order: &[Vertex]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if adj[order[i]] >> order[j] & 1 == 1 {
                code |= 1 << pair_bit(n, i, j);
            }
        }
    }
    code
}

/// Inverse of [`canonical_code`]: vertex `i` is the `i`-th vertex of the
/// canonical order.
pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if code >> pair_bit(n, i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::build(n, &edges).expect("in range")
}

/// Colour refinement to a stable partition. A signature packs the colour
/// above 4-bit neighbour counts per colour, which fits for `n ≤ 11`.
fn refine(adj: &[u64], colour: &mut [u32]) {
    let n = adj.len();
    let mut classes = 0;
    let mut sig = vec![0u64; n];
    let mut ranks = colour.to_vec();
    ranks.sort_unstable();
    ranks.dedup();
    for c in colour.iter_mut() {
        *c = ranks.binary_search(c).expect("present") as u32;
    }
    loop {
        for v in 0..n {
            let mut counts = 0u64;
            for w in crate::graph::BitIter(adj[v]) {
                counts += 1 << (4 * colour[w]);
            }
            sig[v] = u64::from(colour[v]) << 48 | counts;
        }
        let mut sorted = sig.clone();
        sorted.sort_unstable();
        sorted.dedup();
        for v in 0..n {
            colour[v] = sorted.binary_search(&sig[v]).expect("present") as u32;
        }
        if sorted.len() == classes {
            return;
        }
        classes = sorted.len();
    }
}

fn search(adj: &[u64], colour: Vec<u32>, best: &mut u64) {
    let n = adj.len();
    let mut size = [0usize; CANONICAL_LIMIT];
    for &c in &colour {
        size[c as usize] += 1;
    }
    // smallest colour class with more than one vertex
    let Some(c) = (0..n).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c)) else {
        let mut order = vec![0; n];
        for v in 0..n {
            order[colour[v] as usize] = v;
        }
        *best = (*best).max(code_of(adj, &order));
        return;
    };
    let cell: Vec<Vertex> = (0..n).filter(|&v| colour[v] as usize == c).collect();
    let mut explored: Vec<Vertex> = Vec::new();
    for &v in &cell {
        // swapping twins inside one cell is an automorphism of the
        // coloured graph, so their subtrees give the same codes
        let twin = explored.iter().any(|&u| adj[u] & !(1 << v) == adj[v] & !(1 << u));
        if twin {
            continue;
        }
        explored.push(v);
        let mut next: Vec<u32> = colour.iter().enumerate().map(|(x, &k)| 2 * k + u32::from(x != v)).collect();
        refine(adj, &mut next);
        search(adj, next, best);
    }
}

/// Canonical code: equal for two graphs of the same order exactly when they
/// are isomorphic.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.vertex_count();
    assert!(n <= CANONICAL_LIMIT, "canonical codes are limited to {CANONICAL_LIMIT} vertices");
    if n < 2 {
        return 0;
    }
    let adj = g.masks().expect("small graph");
    let mut colour = vec![0u32; n];
    refine(&adj, &mut colour);
    let mut best = 0;
    search(&adj, colour, &mut best);
    best
}

pub fn canonical_form(g: &Graph) -> Graph {
    graph_from_code(g.vertex_count(), canonical_code(g))
}

/// Canonical codes of all graphs on exactly `n` vertices (connected or not),
/// sorted.
pub fn all_graph_codes(n: usize) -> Vec<u64> {
    assert!(n <= EXHAUSTIVE_LIMIT);
    let mut level = vec![0u64];
    for k in 1..n {
        level = extend(&level, k, 0);
    }
    level
}

/// Adds a vertex to each `k`-vertex graph in every possible way, keeping
/// graphs with minimum degree at least `min_degree`.
fn extend(level: &[u64], k: usize, min_degree: usize) -> Vec<u64> {
    let mut seen = HashSet::new();
    for &code in level {
        let g = graph_from_code(k, code);
        for nb in 0u64..1 << k {
            if (nb.count_ones() as usize) < min_degree
                || (0..k).any(|v| g.degree(v) + ((nb >> v & 1) as usize) < min_degree)
            {
                continue;
            }
            let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
            edges.extend((0..k).filter(|&v| nb >> v & 1 == 1).map(|v| (v, k)));
            let h = Graph::build(k + 1, &edges).expect("in range");
            seen.insert(canonical_code(&h));
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// All connected graphs on exactly `n` vertices with minimum degree at
/// least `min_degree`, one per isomorphism class, in canonical form.
pub fn connected_graphs(n: usize, min_degree: usize) -> Vec<Graph> {
    assert!((1..=EXHAUSTIVE_LIMIT).contains(&n));
    let codes = if n == 1 { vec![0] } else { extend(&all_graph_codes(n - 1), n - 1, min_degree) };
    codes
        .into_iter()
        .map(|c| graph_from_code(n, c))
        .filter(|g| g.is_connected() && g.min_degree() >= min_degree)
        .collect()
}

fn exhaustive_entry(g: Graph) -> CatalogEntry {
    CatalogEntry { name: format!("g6:{}", crate::graph::graph6::encode(&g)), graph: g }
}

/// Every connected graph with `1 ≤ v ≤ max_v`.
pub fn exhaustive(max_v: usize) -> Vec<CatalogEntry> {
    assert!(max_v <= EXHAUSTIVE_LIMIT);
    let mut out = Vec::new();
    let mut level = vec![0u64];
    for n in 1..=max_v {
        if n > 1 {
            level = extend(&level, n - 1, 0);
        }
        out.extend(level.iter().map(|&c| graph_from_code(n, c)).filter(Graph::is_connected).map(exhaustive_entry));
    }
    out
}

/// Connected graphs on exactly `n` vertices with minimum degree at least
/// `min_degree`.
pub fn exhaustive_min_degree(n: usize, min_degree: usize) -> Vec<CatalogEntry> {
    connected_graphs(n, min_degree).into_iter().map(exhaustive_entry).collect()
}

/// Named families with `min_v ≤ v ≤ max_v`, deduplicated up to isomorphism
/// where the order allows canonical codes and by edge set otherwise.
pub fn named_graphs(min_v: usize, max_v: usize) -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = Vec::new();
    let mut push = |name: String, g: Graph| {
        let n = g.vertex_count();
        if n < min_v || n > max_v || !g.is_connected() {
            return;
        }
        let dup = out.iter().any(|e| {
            e.graph.vertex_count() == n
                && e.graph.edge_count() == g.edge_count()
                && if n <= CANONICAL_LIMIT { canonical_code(&e.graph) == canonical_code(&g) } else { e.graph == g }
        });
        if !dup {
            out.push(CatalogEntry { name, graph: g });
        }
    };
    for n in 1..=max_v {
        push(format!("complete:{n}"), named::complete(n));
        push(format!("path:{n}"), named::path(n));
        if n >= 3 {
            push(format!("cycle:{n}"), named::cycle(n));
            push(format!("wheel:{}", n - 1), named::wheel(n - 1));
            push(format!("circulant:{n}:1,2"), named::circulant(n, &[1, 2]));
        }
        if n >= 7 {
            push(format!("circulant:{n}:1,3"), named::circulant(n, &[1, 3]));
            push(format!("cycle_complement:{n}"), named::cycle(n).complement());
        }
        for a in 1..=n / 2 {
            push(format!("complete_bipartite:{a}:{}", n - a), named::complete_bipartite(a, n - a));
        }
        for r in 2..=n {
            if n % r == 0 && r <= n / r {
                push(format!("grid:{r}:{}", n / r), named::grid(r, n / r));
            }
        }
        if n % 2 == 0 && n >= 6 {
            push(format!("prism:{}", n / 2), prism(n / 2));
            push(format!("cocktail_party:{}", n / 2), cocktail_party(n / 2));
        }
        if n % 2 == 1 && n >= 5 {
            push(format!("friendship:{}", n / 2), named::shared_vertex_cliques(&vec![3; n / 2]));
        }
    }
    push("petersen".into(), named::petersen());
    push("hypercube:3".into(), named::hypercube(3));
    push("shared:5,5".into(), named::shared_vertex_cliques(&[5, 5]));
    push("shared:4,4,4".into(), named::shared_vertex_cliques(&[4, 4, 4]));
    push("shared:6,6".into(), named::shared_vertex_cliques(&[6, 6]));
    out.sort_by_key(|e| e.graph.vertex_count());
    out
}

fn prism(k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k {
        edges.extend([(i, (i + 1) % k), (k + i, k + (i + 1) % k), (i, k + i)]);
    }
    Graph::build(2 * k, &edges).expect("in range")
}

/// `K_{2k}` minus a perfect matching.
fn cocktail_party(k: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..2 * k {
        for v in u + 1..2 * k {
            if v != u + k {
                edges.push((u, v));
            }
        }
    }
    Graph::build(2 * k, &edges).expect("in range")
}

/// The default catalog up to `max_v` vertices: every connected graph with
/// at most `min(max_v, 8)` vertices, then the named families above that.
pub fn standard(max_v: usize) -> Vec<CatalogEntry> {
    let mut out = exhaustive(max_v.min(8));
    if max_v > 8 {
        out.extend(named_graphs(9, max_v));
    }
    out
}
