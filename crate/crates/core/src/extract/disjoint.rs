//! A maximal family of vertex-disjoint `k`-connected subgraphs of bounded
//! size, extracted greedily from the shrinking residual graph.

use serde::{Deserialize, Serialize};

use super::connect::{k_connected_pieces, ConnectedPiece};
use crate::graph::{degeneracy_coloring, Graph, Vertex};
use crate::profile::ConstantsProfile;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointExtraction {
    pub profile: String,
    pub k: usize,
    pub r: usize,
    pub size_cap: usize,
    pub pieces: Vec<ConnectedPiece>,
    /// Host vertices in no piece.
    pub residual: Vec<Vertex>,
    #[serde(with = "crate::rational_serde::option")]
    pub residual_density: Option<Rational>,
    /// Upper bound on the density of every subgraph of the residual.
    pub residual_degeneracy: usize,
    /// `C·k` when the profile fixes `C`.
    #[serde(with = "crate::rational_serde::option")]
    pub threshold: Option<Rational>,
    /// `k`-connected pieces of the final residual that exceed the cap.
    pub oversized: usize,
}

/// Up to `r` disjoint `k`-connected induced subgraphs of at most `size_cap`
/// vertices. Each round takes the smallest admissible piece of the residual
/// (ties by smallest vertex), so the family is maximal for the splitting
/// search once it stops short of `r`.
pub fn extract_disjoint_connected_subgraphs(
    g: &Graph,
    k: usize,
    r: usize,
    size_cap: usize,
    profile: &ConstantsProfile,
) -> DisjointExtraction {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut pieces = Vec::new();
    let mut oversized = 0;
    while pieces.len() < r {
        let residual: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
        let candidates = k_connected_pieces(g, &residual, k);
        oversized = candidates.iter().filter(|p| p.vertices.len() > size_cap).count();
        let Some(best) = candidates
            .into_iter()
            .filter(|p| p.vertices.len() <= size_cap)
            .min_by_key(|p| (p.vertices.len(), p.vertices[0]))
        else {
            break;
        };
        for &v in &best.vertices {
            alive[v] = false;
        }
        pieces.push(best);
    }
    let residual: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
    let rest = g.induced(&residual).expect("host vertices");
    DisjointExtraction {
        profile: profile.name.clone(),
        k,
        r,
        size_cap,
        pieces,
        residual_density: rest.graph.density().ok(),
        residual_degeneracy: degeneracy_coloring(&rest.graph).degeneracy,
        threshold: profile.global_c.map(|c| c * Rational::from_integer(k as i64)),
        residual,
        oversized,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn examples() {
        let p = ConstantsProfile::desk_small();
        let three = Graph::disjoint_union(&[complete(5), complete(5), complete(5)]);
        let out = extract_disjoint_connected_subgraphs(&three, 4, 3, 10, &p);
        assert_eq!(out.pieces.len(), 3);
        assert!(out.residual.is_empty());

        let mut edges: Vec<(usize, usize)> = complete(5).edges().collect();
        edges.extend(complete(5).edges().map(|(u, v)| (u + 5, v + 5)));
        edges.push((4, 5));
        let bridged = Graph::build(10, &edges).unwrap();
        let out = extract_disjoint_connected_subgraphs(&bridged, 4, 2, 10, &p);
        let sets: Vec<Vec<usize>> = out.pieces.iter().map(|p| p.vertices.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9]]);

        let out = extract_disjoint_connected_subgraphs(&cycle(50), 2, 2, 60, &p);
        assert_eq!(out.pieces.len(), 1);
        assert_eq!(out.residual_density, None);
        let out = extract_disjoint_connected_subgraphs(&cycle(50), 2, 2, 20, &p);
        assert_eq!((out.pieces.len(), out.oversized), (0, 1));
        assert_eq!(out.residual_density, Some(Rational::from_integer(1)));
    }
}
