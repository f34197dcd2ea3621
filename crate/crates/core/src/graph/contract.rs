use super::{Graph, GraphError, Vertex};

/// Quotient of a host graph by a family of disjoint connected parts.
///
/// Quotient vertices `0..parts.len()` are the contracted parts in input
/// order; the remaining quotient vertices are the uncontracted host vertices
/// in increasing host order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    pub parts: Vec<Vec<Vertex>>,
    /// Host vertex -> quotient vertex.
    pub class_of: Vec<Vertex>,
    /// Quotient vertex -> host vertices it stands for.
    pub members: Vec<Vec<Vertex>>,
    pub quotient: Graph,
    /// `e(host) - e(quotient)`.
    pub edge_loss: usize,
}

impl ContractionMap {
    /// Host vertices represented by a set of quotient vertices.
    pub fn lift(&self, quotient_vertices: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = quotient_vertices.iter().flat_map(|&q| self.members[q].iter().copied()).collect();
        out.sort_unstable();
        out
    }
}

/// Contracts each part to a single vertex. Every part must be non-empty and
/// induce a connected subgraph; parts must be pairwise disjoint.
pub fn contract(host: &Graph, parts: &[Vec<Vertex>]) -> Result<ContractionMap, GraphError> {
    let n = host.vertex_count();
    let mut class_of = vec![usize::MAX; n];
    for (pi, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(GraphError::EmptyPart { part: pi });
        }
        for &v in part {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if class_of[v] != usize::MAX {
                return Err(GraphError::OverlappingParts { vertex: v });
            }
            class_of[v] = pi;
        }
        if !host.is_connected_set(part) {
            return Err(GraphError::DisconnectedPart { part: pi });
        }
    }
    let mut members: Vec<Vec<Vertex>> = parts
        .iter()
        .map(|p| {
            let mut p = p.clone();
            p.sort_unstable();
            p
        })
        .collect();
    for v in 0..n {
        if class_of[v] == usize::MAX {
            class_of[v] = members.len();
            members.push(vec![v]);
        }
    }
    let mut adj = vec![Vec::new(); members.len()];
    for (u, v) in host.edges() {
        let (a, b) = (class_of[u], class_of[v]);
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let quotient = Graph::from_raw_adjacency(adj);
    let edge_loss = host.edge_count() - quotient.edge_count();
    Ok(ContractionMap { parts: members[..parts.len()].to_vec(), class_of, members, quotient, edge_loss })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    /// Quotient adjacency recomputed pair by pair from host edges.
    fn brute_quotient_edges(host: &Graph, members: &[Vec<Vertex>]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..members.len() {
            for b in a + 1..members.len() {
                let joined = members[a].iter().any(|&u| members[b].iter().any(|&v| host.has_edge(u, v)));
                if joined {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn petersen_spokes_give_k5() {
        let p = petersen();
        let parts: Vec<Vec<usize>> = (0..5).map(|i| vec![i, i + 5]).collect();
        let map = contract(&p, &parts).unwrap();
        assert_eq!(map.quotient, complete(5));
        assert_eq!(map.edge_loss, 5);
        assert_eq!(brute_quotient_edges(&p, &map.members), map.quotient.edges().collect::<Vec<_>>());
    }

    #[test]
    fn k5_single_edge_gives_k4() {
        let map = contract(&complete(5), &[vec![0, 1]]).unwrap();
        assert_eq!(map.quotient, complete(4));
    }

    #[test]
    fn c6_two_edges_gives_c4() {
        let c6 = cycle(6);
        let map = contract(&c6, &[vec![0, 1], vec![3, 4]]).unwrap();
        assert_eq!(map.quotient.vertex_count(), 4);
        assert!(map.quotient.vertices().all(|v| map.quotient.degree(v) == 2));
        assert!(map.quotient.is_connected());
        assert_eq!(brute_quotient_edges(&c6, &map.members), map.quotient.edges().collect::<Vec<_>>());
    }

    #[test]
    fn disconnected_part_is_named() {
        let err = contract(&cycle(6), &[vec![0, 1], vec![2, 4]]).unwrap_err();
        assert_eq!(err, GraphError::DisconnectedPart { part: 1 });
    }
}
