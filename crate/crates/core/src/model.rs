//! Witness structures shared by the oracles and the linkage machinery.

use serde::{Deserialize, Serialize};

use crate::graph::Vertex;

/// Model of a complete graph `K_h`: pairwise-disjoint connected branch sets,
/// pairwise joined by at least one host edge. `roots[i]`, when present, is
/// the designated root of branch set `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct MinorModel {
    pub branch_sets: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<Vertex>>,
}

impl MinorModel {
    pub fn new(mut branch_sets: Vec<Vec<Vertex>>) -> Self {
        for b in &mut branch_sets {
            b.sort_unstable();
        }
        Self { branch_sets, roots: None }
    }

    pub fn rooted(branch_sets: Vec<Vec<Vertex>>, roots: Vec<Vertex>) -> Self {
        Self { roots: Some(roots), ..Self::new(branch_sets) }
    }

    pub fn order(&self) -> usize {
        self.branch_sets.len()
    }

    /// `V(M)`, sorted.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut all: Vec<Vertex> = self.branch_sets.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    /// Maps every vertex through `f` (e.g. subgraph-to-host relabelling).
    pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> Self {
        Self {
            branch_sets: self
                .branch_sets
                .iter()
                .map(|b| {
                    let mut m: Vec<Vertex> = b.iter().map(|&v| f(v)).collect();
                    m.sort_unstable();
                    m
                })
                .collect(),
            roots: self.roots.as_ref().map(|r| r.iter().map(|&v| f(v)).collect()),
        }
    }
}

/// Vertex-disjoint paths joining terminal pairs; `paths[i]` runs from
/// `pairs[i].0` to `pairs[i].1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Linkage {
    pub pairs: Vec<(Vertex, Vertex)>,
    pub paths: Vec<Vec<Vertex>>,
}

impl Linkage {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut all: Vec<Vertex> = self.paths.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> Self {
        Self {
            pairs: self.pairs.iter().map(|&(s, t)| (f(s), f(t))).collect(),
            paths: self.paths.iter().map(|p| p.iter().map(|&v| f(v)).collect()).collect(),
        }
    }
}

/// A complete-minor model together with a candidate core `S` and a
/// candidate tangent subgraph given by its vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoredModel {
    pub model: MinorModel,
    pub core: Vec<Vertex>,
    pub tangent: Vec<Vertex>,
}

/// Terminal convention for linkage requests: distinct sources, distinct
/// sinks, and `s_i = t_j` only when `i = j`.
pub fn terminals_well_formed(pairs: &[(Vertex, Vertex)]) -> bool {
    for (i, &(si, ti)) in pairs.iter().enumerate() {
        for &(sj, tj) in &pairs[i + 1..] {
            if si == sj || ti == tj || si == tj || ti == sj {
                return false;
            }
        }
    }
    true
}
