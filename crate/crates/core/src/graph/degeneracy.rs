use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyColoring {
    /// Elimination order: `order[0]` was removed first (minimum degree at the
    /// time of removal, ties by smallest index).
    pub order: Vec<Vertex>,
    pub degeneracy: usize,
    /// Color of each vertex, `0..colors`.
    pub coloring: Vec<usize>,
    pub colors: usize,
}

/// Min-degree elimination followed by greedy coloring in reverse elimination
/// order; uses at most `degeneracy + 1` colors.
pub fn degeneracy_coloring(g: &Graph) -> DegeneracyColoring {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = g.vertices().map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    while let Some((d, v)) = queue.pop_first() {
        degeneracy = degeneracy.max(d);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }
    let mut coloring = vec![usize::MAX; n];
    let mut colors = 0;
    let mut used = Vec::new();
    for &v in order.iter().rev() {
        used.clear();
        used.extend(g.neighbors(v).iter().map(|&w| coloring[w]).filter(|&c| c != usize::MAX));
        used.sort_unstable();
        used.dedup();
        let c = used.iter().enumerate().find(|&(i, &c)| i != c).map_or(used.len(), |(i, _)| i);
        coloring[v] = c;
        colors = colors.max(c + 1);
    }
    DegeneracyColoring { order, degeneracy, coloring, colors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn proper(g: &Graph, c: &[usize]) -> bool {
        g.edges().all(|(u, v)| c[u] != c[v])
    }

    #[test]
    fn examples() {
        let r = degeneracy_coloring(&cycle(5));
        assert_eq!(r.degeneracy, 2);
        assert!(r.colors <= 3 && proper(&cycle(5), &r.coloring));
        let r = degeneracy_coloring(&complete(5));
        assert_eq!((r.degeneracy, r.colors), (4, 5));
        let r = degeneracy_coloring(&petersen());
        assert_eq!(r.degeneracy, 3);
        assert!(r.colors <= 4 && proper(&petersen(), &r.coloring));
    }

    #[test]
    fn ties_break_by_smallest_index() {
        assert_eq!(degeneracy_coloring(&cycle(4)).order[0], 0);
        assert_eq!(degeneracy_coloring(&path(4)).order, vec![0, 1, 2, 3]);
    }
}
