//! Seeded instance builders for the linkage property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};
use crate::model::Linkage;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedundantInstance {
    pub graph: Graph,
    pub a1: Vec<Vertex>,
    pub a2: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub p1: Vec<Vec<Vertex>>,
    pub p2: Vec<Vec<Vertex>>,
}

/// An instance satisfying the redundant-paths hypotheses by construction,
/// with at most `max_n` vertices (`max_n >= 16`).
///
/// `B` is kept as small as the hypotheses allow and both systems draw their
/// interiors from one shared pool, so the two systems overlap heavily;
/// `extra_p` adds random edges on top.
pub fn redundant_instance(seed: u64, max_n: usize, extra_p: f64) -> RedundantInstance {
    assert!(max_n >= 16, "need room for the terminal sets");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rng.gen_range(1..=3);
    let q = rng.gen_range(1..=3);
    let nb = 2 * p.max(q) + rng.gen_range(0..=1);
    let pool = rng.gen_range(2..=max_n - p - q - nb);
    let n = p + q + nb + pool;
    let a1: Vec<Vertex> = (0..p).collect();
    let a2: Vec<Vertex> = (p..p + q).collect();
    let b: Vec<Vertex> = (p + q..p + q + nb).collect();
    let w: Vec<Vertex> = (p + q + nb..n).collect();
    let mut edges = Vec::new();
    let system = |own: &[Vertex], rng: &mut ChaCha8Rng, edges: &mut Vec<(Vertex, Vertex)>| {
        let mut ends = b.clone();
        ends.shuffle(rng);
        let mut interior = w.clone();
        interior.shuffle(rng);
        let mut paths = Vec::new();
        for (k, &end) in ends.iter().take(2 * own.len()).enumerate() {
            let len = rng.gen_range(0..=3).min(interior.len());
            let mut path = vec![own[k / 2]];
            path.extend(interior.drain(..len));
            path.push(end);
            edges.extend(path.windows(2).map(|e| (e[0], e[1])));
            paths.push(path);
        }
        paths
    };
    let p1 = system(&a1, &mut rng, &mut edges);
    let p2 = system(&a2, &mut rng, &mut edges);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < extra_p {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::build(n, &edges).expect("in range");
    RedundantInstance { graph, a1, a2, b, p1, p2 }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeaveOverlay {
    pub graph: Graph,
    /// `H` occupies host vertices `0..h`.
    pub h: Vec<Vertex>,
    pub roots: Vec<Vertex>,
    pub linkage: Linkage,
}

/// Embeds `h` as `G[0..h]` and routes at most `b` paths through fresh
/// outside vertices, each path missing `H`, crossing it once, or leaving
/// and re-entering it; terminals may lie in `H`. Roots are `a` random
/// vertices of `H`, possibly on the paths.
pub fn weave_overlay(h: &Graph, a: usize, b: usize, seed: u64) -> WeaveOverlay {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hn = h.vertex_count();
    assert!(a <= hn, "more roots than vertices");
    let mut edges: Vec<(Vertex, Vertex)> = h.edges().collect();
    let mut next = hn;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut used = vec![false; hn];
    let segment = |rng: &mut ChaCha8Rng, used: &mut Vec<bool>| -> Option<Vec<Vertex>> {
        let free: Vec<Vertex> = (0..hn).filter(|&v| !used[v]).collect();
        let &start = free.choose(rng)?;
        used[start] = true;
        let mut seg = vec![start];
        for _ in 0..rng.gen_range(0..=3) {
            let last = seg[seg.len() - 1];
            let options: Vec<Vertex> = h.neighbors(last).iter().copied().filter(|&x| !used[x]).collect();
            let Some(&x) = options.choose(rng) else { break };
            used[x] = true;
            seg.push(x);
        }
        Some(seg)
    };
    let mut pairs = Vec::new();
    let mut paths = Vec::new();
    for _ in 0..rng.gen_range(0..=b) {
        let mut path = Vec::new();
        let kind = rng.gen_range(0..4);
        let inside_start = kind == 3;
        if !inside_start {
            path.push(fresh());
        }
        if kind >= 1 {
            match segment(&mut rng, &mut used) {
                Some(seg) => path.extend(seg),
                None if inside_start => path.push(fresh()),
                None => {}
            }
            if kind == 2 {
                if let Some(seg) = segment(&mut rng, &mut used) {
                    path.push(fresh());
                    path.extend(seg);
                }
            }
        }
        path.push(fresh());
        if kind == 0 {
            path.push(fresh());
        }
        edges.extend(path.windows(2).map(|e| (e[0], e[1])));
        pairs.push((path[0], path[path.len() - 1]));
        paths.push(path);
    }
    let n = next;
    // a few chords from outside vertices into H
    for u in hn..n {
        for v in 0..hn {
            if rng.gen::<f64>() < 0.05 {
                edges.push((u, v));
            }
        }
    }
    let mut roots: Vec<Vertex> = (0..hn).collect();
    roots.shuffle(&mut rng);
    roots.truncate(a);
    WeaveOverlay {
        graph: Graph::build(n, &edges).expect("in range"),
        h: (0..hn).collect(),
        roots,
        linkage: Linkage { pairs, paths },
    }
}

/// A random connected graph on `n` vertices (a random spanning tree plus
/// `G(n, p)` edges) and `k` random terminals, possibly repeated.
pub fn steiner_instance(n: usize, p: f64, k: usize, seed: u64) -> (Graph, Vec<Vertex>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 1..n {
        edges.push((order[i], order[rng.gen_range(0..i)]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let terminals = (0..k).map(|_| rng.gen_range(0..n)).collect();
    (Graph::build(n, &edges).expect("in range"), terminals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::linkage::{redundant_menger_paths, steiner_skeleton, weave, WovenCertificate};
    use crate::verify::check_linkage;

    #[test]
    fn redundant_instances_meet_the_hypotheses() {
        for seed in 0..200 {
            let i = redundant_instance(seed, 60, if seed % 2 == 0 { 0.0 } else { 0.04 });
            assert!(i.graph.vertex_count() <= 60);
            let r = redundant_menger_paths(&i.graph, &i.a1, &i.a2, &i.b, &i.p1, &i.p2).unwrap();
            assert_eq!(r.linkage.paths.len(), i.a1.len() + i.a2.len(), "seed {seed}");
        }
    }

    #[test]
    fn overlays_are_valid_linkages() {
        let k6 = complete(6);
        let cert = WovenCertificate::exhaustive(&k6, &(0..6).collect::<Vec<_>>(), 2, 2, 1_000_000).unwrap();
        for seed in 0..100 {
            let o = weave_overlay(&k6, 2, 2, seed);
            assert!(check_linkage(&o.graph, &o.linkage).is_empty(), "seed {seed}");
            let c = WovenCertificate { vertices: o.h.clone(), ..cert.clone() };
            let w = weave(&o.graph, &c, &o.roots, &o.linkage, 1_000_000).unwrap();
            assert!(w.violations(&o.graph, &o.h, &o.roots, &o.linkage).is_empty());
        }
    }

    #[test]
    fn steiner_instances_are_connected() {
        for seed in 0..50 {
            let (g, s) = steiner_instance(120, 0.01, 10, seed);
            assert!(g.is_connected());
            let sk = steiner_skeleton(&g, &s).unwrap();
            assert!(sk.violations(&g, &s).is_empty());
        }
    }
}
