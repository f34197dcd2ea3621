//! Connected induced skeleton through a terminal set.
//!
//! Terminals are taken in input order. The first one is the whole skeleton;
//! each later terminal `v` outside the skeleton is attached by a shortest
//! path `v ... w u` to it, `u` being the first skeleton vertex, and
//! `u, v, w` join the special set. The interior of a shortest attachment
//! path is induced and has no neighbour in the old skeleton, so the
//! skeleton minus the special set stays bipartite.

use serde::{Deserialize, Serialize};

use super::{in_range, LinkageError};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub terminal: Vertex,
    /// From the terminal to the first skeleton vertex; empty when the
    /// terminal was already in the skeleton.
    pub path: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skeleton {
    /// `V(H)`, sorted; `H` is the subgraph it induces.
    pub vertices: Vec<Vertex>,
    /// `S'`, sorted.
    pub special: Vec<Vertex>,
    pub attachments: Vec<Attachment>,
}

pub fn steiner_skeleton(g: &Graph, terminals: &[Vertex]) -> Result<Skeleton, LinkageError> {
    if terminals.is_empty() {
        return Err(LinkageError::Empty("terminal set"));
    }
    in_range(g, terminals)?;
    if !g.is_connected() {
        return Err(LinkageError::Disconnected);
    }
    let n = g.vertex_count();
    let alive = vec![true; n];
    let mut in_h = vec![false; n];
    let mut special = vec![false; n];
    let first = terminals[0];
    in_h[first] = true;
    special[first] = true;
    let mut attachments = vec![Attachment { terminal: first, path: Vec::new() }];
    for &v in &terminals[1..] {
        if in_h[v] {
            special[v] = true;
            attachments.push(Attachment { terminal: v, path: Vec::new() });
            continue;
        }
        let sources: Vec<Vertex> = (0..n).filter(|&x| in_h[x]).collect();
        let dist = g.bfs_distances(&sources, &alive);
        // lexicographically smallest shortest path: always step to the
        // smallest neighbour one closer to the skeleton
        let mut path = vec![v];
        let mut cur = v;
        while dist[cur] > 0 {
            cur = *g.neighbors(cur).iter().filter(|&&x| dist[x] == dist[cur] - 1).min().expect("connected host");
            path.push(cur);
        }
        let u = path[path.len() - 1];
        let w = path[path.len() - 2];
        for &x in &path {
            in_h[x] = true;
        }
        for x in [u, v, w] {
            special[x] = true;
        }
        attachments.push(Attachment { terminal: v, path });
    }
    Ok(Skeleton {
        vertices: (0..n).filter(|&x| in_h[x]).collect(),
        special: (0..n).filter(|&x| special[x]).collect(),
        attachments,
    })
}

impl Skeleton {
    /// The stated clauses, checked from scratch: `H` connected, `S ⊆ S' ⊆
    /// V(H)`, `|S'| ≤ 3|S|` (distinct terminals), and `H - S'` bipartite.
    pub fn violations(&self, g: &Graph, terminals: &[Vertex]) -> Vec<String> {
        let mut out = Vec::new();
        if !g.is_connected_set(&self.vertices) {
            out.push("skeleton is not connected".to_string());
        }
        if let Some(t) = terminals.iter().find(|t| self.special.binary_search(t).is_err()) {
            out.push(format!("terminal {t} missing from the special set"));
        }
        if let Some(s) = self.special.iter().find(|s| self.vertices.binary_search(s).is_err()) {
            out.push(format!("special vertex {s} outside the skeleton"));
        }
        let mut distinct = terminals.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if self.special.len() > 3 * distinct.len() {
            out.push(format!("special set has {} > 3 * {} vertices", self.special.len(), distinct.len()));
        }
        let rest: Vec<Vertex> =
            self.vertices.iter().copied().filter(|v| self.special.binary_search(v).is_err()).collect();
        if !g.is_bipartite_within(&rest) {
            out.push("skeleton minus special set has an odd cycle".to_string());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::Family;
    use crate::graph::named::*;
    use crate::oracles::chromatic_number;

    #[test]
    fn path_example() {
        let g = path(10);
        let s = steiner_skeleton(&g, &[0, 9]).unwrap();
        assert_eq!(s.vertices, (0..10).collect::<Vec<_>>());
        assert_eq!(s.special, vec![0, 1, 9]);
        assert!(s.violations(&g, &[0, 9]).is_empty());
    }

    #[test]
    fn cycle_example() {
        let g = cycle(6);
        let s = steiner_skeleton(&g, &[0, 3]).unwrap();
        // from 3 the smaller of the two shortest arcs' first steps is 2
        assert_eq!(s.attachments[1].path, vec![3, 2, 1, 0]);
        assert_eq!(s.vertices, vec![0, 1, 2, 3]);
        assert_eq!(s.special, vec![0, 1, 3]);
        assert!(s.violations(&g, &[0, 3]).is_empty());
    }

    #[test]
    fn single_terminal() {
        for g in [petersen(), complete(5), path(3)] {
            let s = steiner_skeleton(&g, &[2]).unwrap();
            assert_eq!((s.vertices.clone(), s.special.clone()), (vec![2], vec![2]));
        }
    }

    #[test]
    fn rejections() {
        let two = Graph::disjoint_union(&[path(2), path(2)]);
        assert_eq!(steiner_skeleton(&two, &[0, 3]), Err(LinkageError::Disconnected));
        assert!(matches!(steiner_skeleton(&path(3), &[5]), Err(LinkageError::VertexOutOfRange { vertex: 5, .. })));
        assert!(matches!(steiner_skeleton(&path(3), &[]), Err(LinkageError::Empty(_))));
    }

    #[test]
    fn remainder_is_two_colorable_by_exact_oracle() {
        for seed in 0..60 {
            let g = Family::Gnp { n: 30, p: 0.12 }.generate(seed).unwrap();
            if !g.is_connected() {
                continue;
            }
            let terms = [seed as usize % 30, 7, 19, 28];
            let s = steiner_skeleton(&g, &terms).unwrap();
            assert!(s.violations(&g, &terms).is_empty());
            let rest: Vec<Vertex> = s.vertices.iter().copied().filter(|v| !s.special.contains(v)).collect();
            let sub = g.induced(&rest).unwrap();
            assert!(chromatic_number(&sub.graph).unwrap().chi <= 2);
        }
    }
}
