//! `(a, b)`-woven checks.
//!
//! For roots `R` and terminal pairs `(s_i, t_i)` we need a `K_a` model rooted
//! at `R` and a linkage meeting it exactly in `R ∩ (S ∪ T)`. Paths therefore
//! avoid `R \ (S ∪ T)`, and the model lives in `G - (V(P) \ R)`. Shrinking
//! a path to a chordless one only frees vertices, so it suffices to try the
//! chordless linkages.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::paths::{enumerate_linkages, Enumeration};
use super::rooted::{rooted_complete_model, RootedOutcome};
use super::{to_mask, too_large, OracleError};
use crate::graph::{Graph, Vertex};
use crate::model::{terminals_well_formed, Linkage, MinorModel};

const EXHAUSTIVE_VERTICES: usize = 10;
const EXHAUSTIVE_A: usize = 3;
const EXHAUSTIVE_B: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum WovenMode {
    /// Every `(R, S, T)`; refused outside the exhaustive limits.
    Exhaustive,
    Sampled {
        samples: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WovenCounterexample {
    pub roots: Vec<Vertex>,
    pub pairs: Vec<(Vertex, Vertex)>,
    /// Chordless linkages tried, none of which left room for a rooted model.
    pub linkages_tried: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum WovenVerdict {
    Woven { instances: u64 },
    NotWoven { counterexample: WovenCounterexample },
    NoCounterexampleSampled { samples: u64 },
    Unknown { instances: u64 },
}

impl WovenVerdict {
    pub fn is_woven(&self) -> bool {
        matches!(self, WovenVerdict::Woven { .. })
    }
}

/// Outcome of one `(R, S, T)` instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeaveOutcome {
    Found { model: MinorModel, linkage: Linkage },
    Absent { linkages_tried: u64 },
    Unknown,
}

/// Solves one instance; `budget` bounds both the linkage enumeration and
/// each rooted-model search.
pub fn woven_instance(g: &Graph, roots: &[Vertex], pairs: &[(Vertex, Vertex)], budget: u64) -> WeaveOutcome {
    let adj = g.masks().expect("woven checks need at most 64 vertices");
    instance(&adj, g.vertex_count(), roots, pairs, budget)
}

fn instance(adj: &[u64], n: usize, roots: &[Vertex], pairs: &[(Vertex, Vertex)], budget: u64) -> WeaveOutcome {
    let terminals = pairs.iter().fold(0u64, |m, &(s, t)| m | 1 << s | 1 << t);
    let root_mask = to_mask(roots);
    let all = super::full_mask(n);
    let mut tried = 0u64;
    let mut unknown = false;
    let mut found = None;
    let end = enumerate_linkages(adj, pairs, root_mask & !terminals, budget, &mut |paths| {
        tried += 1;
        let on_paths = paths.iter().flatten().fold(0u64, |m, &v| m | 1 << v);
        match rooted_complete_model(adj, roots, all & !(on_paths & !root_mask), budget) {
            RootedOutcome::Found { model } => {
                found = Some((model, paths.to_vec()));
                true
            }
            RootedOutcome::Absent => false,
            RootedOutcome::Unknown => {
                unknown = true;
                false
            }
        }
    });
    match found {
        Some((model, paths)) => WeaveOutcome::Found { model, linkage: Linkage { pairs: pairs.to_vec(), paths } },
        None if unknown || end == Enumeration::OutOfBudget => WeaveOutcome::Unknown,
        None => WeaveOutcome::Absent { linkages_tried: tried },
    }
}

pub fn is_woven(g: &Graph, a: usize, b: usize, mode: &WovenMode, budget: u64) -> Result<WovenVerdict, OracleError> {
    let n = g.vertex_count();
    if n > 64 {
        return Err(too_large("is_woven", n, 64));
    }
    let adj = g.masks().expect("within mask width");
    match mode {
        WovenMode::Exhaustive => {
            if n > EXHAUSTIVE_VERTICES || a > EXHAUSTIVE_A || b > EXHAUSTIVE_B {
                return Err(OracleError::InvalidArgument(format!(
                    "exhaustive woven check needs v <= {EXHAUSTIVE_VERTICES}, a <= {EXHAUSTIVE_A}, b <= {EXHAUSTIVE_B}"
                )));
            }
            let root_sets = combinations(n, a);
            let pair_sets = pair_systems(n, b);
            let per_root: Vec<Result<u64, (Option<WovenCounterexample>, u64)>> = root_sets
                .par_iter()
                .map(|roots| {
                    let mut count = 0;
                    let mut unknown = false;
                    for pairs in &pair_sets {
                        count += 1;
                        match instance(&adj, n, roots, pairs, budget) {
                            WeaveOutcome::Found { .. } => {}
                            WeaveOutcome::Absent { linkages_tried } => {
                                return Err((
                                    Some(WovenCounterexample {
                                        roots: roots.clone(),
                                        pairs: pairs.clone(),
                                        linkages_tried,
                                    }),
                                    count,
                                ))
                            }
                            WeaveOutcome::Unknown => unknown = true,
                        }
                    }
                    if unknown {
                        Err((None, count))
                    } else {
                        Ok(count)
                    }
                })
                .collect();
            let instances: u64 = per_root
                .iter()
                .map(|r| match r {
                    Ok(c) | Err((_, c)) => *c,
                })
                .sum();
            if let Some(counterexample) = per_root.iter().find_map(|r| match r {
                Err((Some(c), _)) => Some(c.clone()),
                _ => None,
            }) {
                return Ok(WovenVerdict::NotWoven { counterexample });
            }
            if per_root.iter().any(Result::is_err) {
                return Ok(WovenVerdict::Unknown { instances });
            }
            Ok(WovenVerdict::Woven { instances })
        }
        WovenMode::Sampled { samples, seed } => {
            if a > n {
                return Ok(WovenVerdict::NoCounterexampleSampled { samples: 0 });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut unknown = false;
            let mut done = 0;
            for _ in 0..*samples {
                let mut roots: Vec<Vertex> = sample(&mut rng, n, a).into_vec();
                roots.sort_unstable();
                let Some(pairs) = random_pairs(&mut rng, n, b) else { break };
                done += 1;
                match instance(&adj, n, &roots, &pairs, budget) {
                    WeaveOutcome::Found { .. } => {}
                    WeaveOutcome::Absent { linkages_tried } => {
                        return Ok(WovenVerdict::NotWoven {
                            counterexample: WovenCounterexample { roots, pairs, linkages_tried },
                        })
                    }
                    WeaveOutcome::Unknown => unknown = true,
                }
            }
            Ok(if unknown {
                WovenVerdict::Unknown { instances: done }
            } else {
                WovenVerdict::NoCounterexampleSampled { samples: done }
            })
        }
    }
}

fn random_pairs(rng: &mut ChaCha8Rng, n: usize, b: usize) -> Option<Vec<(Vertex, Vertex)>> {
    for _ in 0..100 {
        let trivial: Vec<bool> = (0..b).map(|_| rng.gen_bool(0.15)).collect();
        let need = trivial.iter().map(|&t| if t { 1 } else { 2 }).sum::<usize>();
        if need > n {
            continue;
        }
        let picks = sample(rng, n, need).into_vec();
        let mut it = picks.into_iter();
        let pairs: Vec<(Vertex, Vertex)> = trivial
            .iter()
            .map(|&t| {
                let s = it.next().expect("sampled");
                (s, if t { s } else { it.next().expect("sampled") })
            })
            .collect();
        debug_assert!(terminals_well_formed(&pairs));
        return Some(pairs);
    }
    None
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Every set of `b` pairwise-disjoint terminal pairs `{s, t}` (with `s <= t`),
/// up to the order of the pairs and of the ends within a pair, which do not
/// affect the instance.
fn pair_systems(n: usize, b: usize) -> Vec<Vec<(Vertex, Vertex)>> {
    let items: Vec<(Vertex, Vertex)> = (0..n).flat_map(|s| (s..n).map(move |t| (s, t))).collect();
    let mut out = Vec::new();
    fn rec(
        start: usize,
        items: &[(Vertex, Vertex)],
        b: usize,
        used: u64,
        cur: &mut Vec<(Vertex, Vertex)>,
        out: &mut Vec<Vec<(Vertex, Vertex)>>,
    ) {
        if cur.len() == b {
            out.push(cur.clone());
            return;
        }
        for (i, &(s, t)) in items.iter().enumerate().skip(start) {
            let m = 1u64 << s | 1u64 << t;
            if used & m == 0 {
                cur.push((s, t));
                rec(i + 1, items, b, used | m, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, &items, b, 0, &mut Vec::new(), &mut out);
    out
}
