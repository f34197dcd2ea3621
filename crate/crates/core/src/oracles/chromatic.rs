//! Exact chromatic number by DSATUR branch and bound.
//!
//! Lower bound: a maximum clique, precoloured `0..ω`. Upper bound: the
//! smallest-last greedy colouring. Search nodes are counted against a budget.

use serde::{Deserialize, Serialize};

use super::independence::complement_masks;
use super::independence::max_independent_set_within;
use super::{bits, full_mask, too_large, OracleError};
use crate::graph::{degeneracy_coloring, Graph};

pub const CHROMATIC_LIMIT: usize = 64;
const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chromatic {
    pub chi: usize,
    pub coloring: Vec<usize>,
}

pub fn chromatic_number(g: &Graph) -> Result<Chromatic, OracleError> {
    chromatic_number_with_budget(g, DEFAULT_BUDGET).map_err(|(e, _, _)| e)
}

/// On budget exhaustion the error carries the best `(lower, upper)` bounds.
pub fn chromatic_number_with_budget(g: &Graph, budget: u64) -> Result<Chromatic, (OracleError, usize, usize)> {
    let n = g.vertex_count();
    if n > CHROMATIC_LIMIT {
        return Err((too_large("chromatic_number", n, CHROMATIC_LIMIT), 0, n));
    }
    if n == 0 {
        return Ok(Chromatic { chi: 0, coloring: Vec::new() });
    }
    let adj = g.masks().expect("within mask width");
    let clique = max_independent_set_within(&complement_masks(&adj), full_mask(n));
    let lower = clique.count_ones() as usize;
    let greedy = degeneracy_coloring(g);
    if greedy.colors == lower {
        return Ok(Chromatic { chi: lower, coloring: greedy.coloring });
    }
    let mut s = Search {
        adj: &adj,
        color: vec![NONE; n],
        forbidden: vec![0u64; n],
        counts: vec![[0u8; 64]; n],
        best: greedy.colors,
        best_coloring: greedy.coloring,
        lower,
        nodes: 0,
        budget,
    };
    for (c, v) in bits(clique).enumerate() {
        s.assign(v, c);
    }
    let done = s.run(lower, n - lower);
    if !done && s.best > s.lower {
        return Err((OracleError::BudgetExhausted { oracle: "chromatic_number".into(), budget }, s.lower, s.best));
    }
    Ok(Chromatic { chi: s.best, coloring: s.best_coloring })
}

const NONE: usize = usize::MAX;

struct Search<'a> {
    adj: &'a [u64],
    color: Vec<usize>,
    /// bitmask of colours present on coloured neighbours
    forbidden: Vec<u64>,
    counts: Vec<[u8; 64]>,
    best: usize,
    best_coloring: Vec<usize>,
    lower: usize,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for w in bits(self.adj[v]) {
            self.counts[w][c] += 1;
            self.forbidden[w] |= 1 << c;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = NONE;
        for w in bits(self.adj[v]) {
            self.counts[w][c] -= 1;
            if self.counts[w][c] == 0 {
                self.forbidden[w] &= !(1 << c);
            }
        }
    }

    /// Returns false when the budget ran out.
    fn run(&mut self, used: usize, uncolored: usize) -> bool {
        if used >= self.best {
            return true;
        }
        if uncolored == 0 {
            self.best = used;
            self.best_coloring = self.color.clone();
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let v = (0..self.color.len())
            .filter(|&v| self.color[v] == NONE)
            .max_by_key(|&v| {
                let free_deg = bits(self.adj[v]).filter(|&w| self.color[w] == NONE).count();
                (self.forbidden[v].count_ones(), free_deg, std::cmp::Reverse(v))
            })
            .expect("uncolored vertex exists");
        for c in 0..=used.min(63) {
            if self.forbidden[v] >> c & 1 == 1 {
                continue;
            }
            let next = if c == used { used + 1 } else { used };
            if next >= self.best {
                continue;
            }
            self.assign(v, c);
            let ok = self.run(next, uncolored - 1);
            self.unassign(v);
            if !ok {
                return false;
            }
            if self.best == self.lower {
                return true;
            }
        }
        true
    }
}
