//! Hall ratio `ρ(G) = max v(H)/α(H)` over induced subgraphs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::independence::alpha_within;
use super::{full_mask, mask_vertices, to_mask, too_large, OracleError};
use crate::graph::{Graph, Vertex};
use crate::Rational;

pub const HALL_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallRatio {
    #[serde(with = "crate::rational_serde")]
    pub rho: Rational,
    /// Vertex set of an induced subgraph attaining `rho`.
    pub witness: Vec<Vertex>,
    pub witness_alpha: usize,
    /// False for the lower-bound mode.
    pub exact: bool,
}

/// `α(G[U])` for every `U ⊆ V(G)`, indexed by bitmask.
pub fn alpha_table(g: &Graph) -> Result<Vec<u8>, OracleError> {
    let n = g.vertex_count();
    if n > HALL_LIMIT {
        return Err(too_large("alpha_table", n, HALL_LIMIT));
    }
    let adj = g.masks().expect("within mask width");
    let mut alpha = vec![0u8; 1 << n];
    for u in 1usize..1 << n {
        let v = u.trailing_zeros() as usize;
        let without = u & !(1 << v);
        let closed = without & !(adj[v] as usize);
        alpha[u] = alpha[without].max(1 + alpha[closed]);
    }
    Ok(alpha)
}

/// Exact for at most [`HALL_LIMIT`] vertices. Among maximisers the witness
/// is the largest set, then the smallest bitmask.
pub fn hall_ratio(g: &Graph) -> Result<HallRatio, OracleError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(OracleError::InvalidArgument("Hall ratio of the empty graph".into()));
    }
    let alpha = alpha_table(g)?;
    let mut best = (Rational::from_integer(0), 0usize, 0usize);
    for u in 1usize..1 << n {
        let r = Rational::new(u.count_ones() as i64, i64::from(alpha[u]));
        let size = u.count_ones() as usize;
        if r > best.0 || (r == best.0 && size > best.1.count_ones() as usize) {
            best = (r, u, 0);
        }
    }
    let (rho, mask, _) = best;
    Ok(HallRatio { rho, witness: mask_vertices(mask as u64), witness_alpha: usize::from(alpha[mask]), exact: true })
}

/// Lower bound for larger graphs (up to 64 vertices): the best of a maximum
/// clique, the whole graph when `α` is computable, and `samples` random
/// induced subgraphs of at most 40 vertices.
pub fn hall_ratio_lower_bound(g: &Graph, samples: usize, seed: u64) -> Result<HallRatio, OracleError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(OracleError::InvalidArgument("Hall ratio of the empty graph".into()));
    }
    if n <= HALL_LIMIT {
        return hall_ratio(g);
    }
    if n > 64 {
        return Err(too_large("hall_ratio_lower_bound", n, 64));
    }
    let adj = g.masks().expect("within mask width");
    let clique = super::max_clique(g)?;
    let mut best = (Rational::from_integer(clique.len() as i64), clique, 1usize);
    let consider = |set: u64, best: &mut (Rational, Vec<Vertex>, usize)| {
        let a = alpha_within(&adj, set);
        let r = Rational::new(set.count_ones() as i64, a as i64);
        if r > best.0 {
            *best = (r, mask_vertices(set), a);
        }
    };
    if n <= 40 {
        consider(full_mask(n), &mut best);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Vertex> = (0..n).collect();
    for i in 0..samples {
        order.shuffle(&mut rng);
        let size = 2 + i % (n.min(40) - 1);
        consider(to_mask(&order[..size]), &mut best);
    }
    Ok(HallRatio { rho: best.0, witness: best.1, witness_alpha: best.2, exact: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn examples() {
        assert_eq!(hall_ratio(&complete(6)).unwrap().rho, Rational::from_integer(6));
        assert_eq!(hall_ratio(&cycle(5)).unwrap().rho, Rational::new(5, 2));
        let p = hall_ratio(&petersen()).unwrap();
        assert_eq!(p.rho, Rational::new(5, 2));
        assert_eq!(p.witness, (0..10).collect::<Vec<_>>());
        assert_eq!(p.witness_alpha, 4);
    }

    #[test]
    fn dominates_clique_and_whole_graph() {
        use crate::graph::generate::Family;
        for seed in 0..30 {
            let g = Family::Gnp { n: 11, p: 0.4 }.generate(seed).unwrap();
            let h = hall_ratio(&g).unwrap();
            let alpha = super::super::independence_number(&g).unwrap().size;
            assert!(h.rho >= Rational::new(11, alpha as i64));
            assert!(h.rho >= Rational::from_integer(super::super::clique_number(&g).unwrap() as i64));
        }
    }

    #[test]
    fn refusal_and_lower_bound() {
        let g = cycle(21);
        assert!(matches!(hall_ratio(&g), Err(OracleError::TooLarge { .. })));
        let lb = hall_ratio_lower_bound(&g, 20, 1).unwrap();
        assert!(!lb.exact);
        assert_eq!(lb.rho, Rational::new(21, 10));
    }
}
