//! Chromatic separability on at most 12 vertices.
//!
//! `χ` of every induced subgraph comes from one subset DP: a colouring of
//! `U` has a class containing the lowest vertex of `U`, so
//! `χ(U) = 1 + min χ(U \ I)` over independent `I ⊆ U` holding that vertex.
//! Since `χ` is monotone, `G` is `s`-separable exactly when some `V1` has
//! `χ(V1) >= c` and `χ(V \ V1) >= c`, where `c = χ(G) - s`.

use serde::{Deserialize, Serialize};

use super::{mask_vertices, too_large, OracleError};
use crate::graph::{Graph, Vertex};

pub const SEPARABILITY_LIMIT: usize = 12;

/// `χ(G[U])` for every bitmask `U`.
pub fn chi_table(g: &Graph) -> Result<Vec<u8>, OracleError> {
    let n = g.vertex_count();
    if n > SEPARABILITY_LIMIT {
        return Err(too_large("chi_table", n, SEPARABILITY_LIMIT));
    }
    let adj = g.masks().expect("within mask width");
    let size = 1usize << n;
    let mut independent = vec![false; size];
    independent[0] = true;
    for u in 1..size {
        let v = u.trailing_zeros() as usize;
        let rest = u & !(1 << v);
        independent[u] = independent[rest] && (adj[v] as usize) & rest == 0;
    }
    let mut chi = vec![0u8; size];
    for u in 1..size {
        let low = u & u.wrapping_neg();
        let rest = u & !low;
        let mut best = u8::MAX;
        // I = low ∪ J for independent J ⊆ rest
        let mut j = rest;
        loop {
            if independent[j | low] {
                best = best.min(chi[rest & !j]);
            }
            if j == 0 {
                break;
            }
            j = (j - 1) & rest;
        }
        chi[u] = best + 1;
    }
    Ok(chi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Separability {
    /// Disjoint vertex sets whose induced subgraphs both reach `needed`.
    Separable { first: Vec<Vertex>, second: Vec<Vertex>, chi_first: usize, chi_second: usize, chi: usize, needed: i64 },
    /// Every split `(V1, V \ V1)` was checked; `best_split` is the largest
    /// `min(χ(V1), χ(V \ V1))` found, which is below `needed`.
    Inseparable { chi: usize, needed: i64, splits_checked: u64, best_split: usize },
}

impl Separability {
    pub fn is_separable(&self) -> bool {
        matches!(self, Separability::Separable { .. })
    }
}

pub fn chromatic_separability(g: &Graph, s: usize) -> Result<Separability, OracleError> {
    let n = g.vertex_count();
    let chi = chi_table(g)?;
    let full = (1usize << n) - 1;
    let chi_g = usize::from(chi[full]);
    let needed = chi_g as i64 - s as i64;
    if needed <= 0 {
        return Ok(Separability::Separable {
            first: Vec::new(),
            second: Vec::new(),
            chi_first: 0,
            chi_second: 0,
            chi: chi_g,
            needed,
        });
    }
    let mut best_split = 0;
    let mut checked = 0u64;
    for v1 in 0..=full {
        let v2 = full & !v1;
        checked += 1;
        let (a, b) = (usize::from(chi[v1]), usize::from(chi[v2]));
        if a.min(b) as i64 >= needed {
            // shrink the second side to a minimal subset keeping χ >= needed
            let mut second = v2;
            for v in mask_vertices(v2 as u64) {
                let smaller = second & !(1 << v);
                if i64::from(chi[smaller]) >= needed {
                    second = smaller;
                }
            }
            return Ok(Separability::Separable {
                first: mask_vertices(v1 as u64),
                second: mask_vertices(second as u64),
                chi_first: a,
                chi_second: usize::from(chi[second]),
                chi: chi_g,
                needed,
            });
        }
        best_split = best_split.max(a.min(b));
    }
    Ok(Separability::Inseparable { chi: chi_g, needed, splits_checked: checked, best_split })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn chi_table_matches_oracle() {
        use crate::graph::generate::Family;
        for seed in 0..10 {
            let g = Family::Gnp { n: 9, p: 0.5 }.generate(seed).unwrap();
            let t = chi_table(&g).unwrap();
            assert_eq!(usize::from(t[511]), super::super::chromatic_number(&g).unwrap().chi);
            let sub = [0, 2, 3, 7];
            let m = sub.iter().fold(0usize, |m, &v| m | 1 << v);
            let h = g.induced(&sub).unwrap().graph;
            assert_eq!(usize::from(t[m]), super::super::chromatic_number(&h).unwrap().chi);
        }
    }

    #[test]
    fn examples() {
        let two = Graph::disjoint_union(&[complete(4), complete(4)]);
        let r = chromatic_separability(&two, 0).unwrap();
        assert!(r.is_separable(), "{r:?}");
        match chromatic_separability(&complete(5), 2).unwrap() {
            Separability::Inseparable { chi: 5, needed: 3, best_split, .. } => assert_eq!(best_split, 2),
            other => panic!("{other:?}"),
        }
        match chromatic_separability(&cycle(5), 1).unwrap() {
            Separability::Separable { chi_first, chi_second, .. } => assert!(chi_first >= 2 && chi_second >= 2),
            other => panic!("{other:?}"),
        }
        assert!(chromatic_separability(&complete(3), 5).unwrap().is_separable());
        assert!(chromatic_separability(&path(13), 0).is_err());
    }
}
