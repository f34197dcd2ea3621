//! Rooted complete-minor search on at most 64 vertices.
//!
//! Classes start as the singleton roots. While some pair of classes is not
//! adjacent, any completion must grow one of the two by a vertex adjacent to
//! it, so the search branches on exactly those extensions.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{bits, mask_vertices};
use crate::graph::Vertex;
use crate::model::MinorModel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RootedOutcome {
    Found { model: MinorModel },
    Absent,
    Unknown,
}

/// `K_a` model rooted at `roots` (in that order) using only vertices of
/// `allowed`, given neighbour bitmasks `adj`.
pub fn rooted_complete_model(adj: &[u64], roots: &[Vertex], allowed: u64, budget: u64) -> RootedOutcome {
    let root_mask = roots.iter().fold(0u64, |m, &r| m | 1 << r);
    if root_mask.count_ones() as usize != roots.len() || root_mask & !allowed != 0 {
        return RootedOutcome::Absent;
    }
    let mut s = Search { adj, allowed, seen: HashSet::new(), nodes: 0, budget };
    let start: Vec<u64> = roots.iter().map(|&r| 1u64 << r).collect();
    match s.run(start) {
        Some(classes) => RootedOutcome::Found {
            model: MinorModel::rooted(classes.iter().map(|&c| mask_vertices(c)).collect(), roots.to_vec()),
        },
        None if s.nodes > budget => RootedOutcome::Unknown,
        None => RootedOutcome::Absent,
    }
}

struct Search<'a> {
    adj: &'a [u64],
    allowed: u64,
    seen: HashSet<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn neighborhood(&self, class: u64) -> u64 {
        bits(class).fold(0, |m, v| m | self.adj[v]) & !class
    }

    fn run(&mut self, classes: Vec<u64>) -> Option<Vec<u64>> {
        if self.nodes > self.budget || !self.seen.insert(classes.clone()) {
            return None;
        }
        self.nodes += 1;
        let used = classes.iter().fold(0, |m, c| m | c);
        let free = self.allowed & !used;
        let nbhd: Vec<u64> = classes.iter().map(|&c| self.neighborhood(c)).collect();
        let missing = (0..classes.len())
            .flat_map(|i| (i + 1..classes.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| nbhd[i] & classes[j] == 0)
            .min_by_key(|&(i, j)| ((nbhd[i] & free).count_ones() + (nbhd[j] & free).count_ones(), i, j));
        let Some((i, j)) = missing else {
            return Some(classes);
        };
        // extensions that touch the other class first
        let mut options: Vec<(usize, Vertex)> =
            bits(nbhd[i] & free).map(|v| (i, v)).chain(bits(nbhd[j] & free).map(|v| (j, v))).collect();
        let target = |&(k, v): &(usize, Vertex)| {
            let other = if k == i { classes[j] } else { classes[i] };
            u8::from(self.adj[v] & other == 0)
        };
        options.sort_by_key(|o| (target(o), o.1, o.0));
        for (k, v) in options {
            let mut next = classes.clone();
            next[k] |= 1 << v;
            if let Some(found) = self.run(next) {
                return Some(found);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::verify::check_minor_model;

    #[test]
    fn rooted_triangles() {
        let g = cycle(6);
        let adj = g.masks().unwrap();
        match rooted_complete_model(&adj, &[0, 2, 4], u64::MAX >> 58, u64::MAX) {
            RootedOutcome::Found { model } => assert!(check_minor_model(&g, &model).is_empty()),
            other => panic!("{other:?}"),
        }
        // K4 rooted anywhere in C6 is impossible
        assert_eq!(rooted_complete_model(&adj, &[0, 1, 2, 3], u64::MAX >> 58, u64::MAX), RootedOutcome::Absent);
    }

    #[test]
    fn restricted_vertex_set() {
        let g = cycle(5);
        let adj = g.masks().unwrap();
        // roots 0 and 2 without vertex 1 must use the long way round
        match rooted_complete_model(&adj, &[0, 2], 0b11101, u64::MAX) {
            RootedOutcome::Found { model } => {
                assert!(check_minor_model(&g, &model).is_empty());
                assert!(!model.vertices().contains(&1));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(rooted_complete_model(&adj, &[0, 2], 0b00101, u64::MAX), RootedOutcome::Absent);
    }

    #[test]
    fn k4_rooted_in_k5() {
        let g = complete(5);
        let adj = g.masks().unwrap();
        assert!(matches!(rooted_complete_model(&adj, &[4, 1, 3, 0], 0b11111, u64::MAX), RootedOutcome::Found { .. }));
    }
}
