//! Disjoint paths from two redundantly linked sets.
//!
//! Given `A1, A2, B` and, for each `i`, a system of `2|A_i|` `A_i`-`B` paths
//! in `G - A_{3-i}` that are disjoint away from `A_i` and use every vertex of
//! `A_i` exactly twice, there are `|A1| + |A2|` disjoint `(A1 ∪ A2)`-`B`
//! paths. The hypotheses are checked clause by clause; the paths themselves
//! come from a max-flow, the supplied systems serving only as evidence.

use serde::{Deserialize, Serialize};

use super::{ab_path_problems, in_range, LinkageError};
use crate::graph::{Graph, Vertex};
use crate::model::Linkage;
use crate::oracles;
use crate::verify::check_linkage;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Hypothesis {
    EmptySet { set: String },
    NotDisjoint { first: String, second: String, vertex: Vertex },
    SystemSize { system: usize, expected: usize, found: usize },
    NotAPath { system: usize, path: usize },
    WrongEnds { system: usize, path: usize },
    TouchesOtherSide { system: usize, path: usize, vertex: Vertex },
    Overlap { system: usize, first: usize, second: usize, vertex: Vertex },
    Multiplicity { system: usize, vertex: Vertex, paths: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedundantPaths {
    /// `paths[j]` runs from its first vertex in `A1 ∪ A2` to its last in `B`.
    pub linkage: Linkage,
    pub separator: Vec<Vertex>,
}

pub fn redundant_menger_paths(
    g: &Graph,
    a1: &[Vertex],
    a2: &[Vertex],
    b: &[Vertex],
    p1: &[Vec<Vertex>],
    p2: &[Vec<Vertex>],
) -> Result<RedundantPaths, LinkageError> {
    in_range(g, a1.iter().chain(a2).chain(b).chain(p1.iter().flatten()).chain(p2.iter().flatten()))?;
    let violations = hypotheses(g, [a1, a2], b, [p1, p2]);
    if !violations.is_empty() {
        return Err(LinkageError::Hypotheses(violations));
    }
    let mut sources = a1.to_vec();
    sources.extend_from_slice(a2);
    let flow = oracles::menger(g, &sources, b);
    let need = a1.len() + a2.len();
    if flow.paths.len() < need {
        return Err(LinkageError::Counterexample(format!(
            "hypotheses hold but only {} of {need} disjoint paths exist (separator {:?})",
            flow.paths.len(),
            flow.separator
        )));
    }
    let linkage = Linkage { pairs: flow.paths.iter().map(|p| (p[0], p[p.len() - 1])).collect(), paths: flow.paths };
    let mut problems: Vec<String> = check_linkage(g, &linkage).iter().map(|v| format!("{v:?}")).collect();
    problems.extend(ab_path_problems(g, &sources, b, &linkage.paths));
    if !problems.is_empty() {
        return Err(LinkageError::Counterexample(format!("flow output fails re-verification: {problems:?}")));
    }
    Ok(RedundantPaths { linkage, separator: flow.separator })
}

fn hypotheses(g: &Graph, a: [&[Vertex]; 2], b: &[Vertex], p: [&[Vec<Vertex>]; 2]) -> Vec<Hypothesis> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let named = [("A1", a[0]), ("A2", a[1]), ("B", b)];
    for (name, set) in named {
        if set.is_empty() {
            out.push(Hypothesis::EmptySet { set: name.into() });
        }
    }
    let mut label: Vec<Option<&str>> = vec![None; n];
    for (name, set) in named {
        for &v in set {
            match label[v] {
                Some(first) if first != name => {
                    out.push(Hypothesis::NotDisjoint { first: first.into(), second: name.into(), vertex: v })
                }
                _ => label[v] = Some(name),
            }
        }
    }
    for i in 0..2 {
        let (own, other, sys) = (a[i], a[1 - i], p[i]);
        let system = i + 1;
        if sys.len() != 2 * own.len() {
            out.push(Hypothesis::SystemSize { system, expected: 2 * own.len(), found: sys.len() });
        }
        for (j, path) in sys.iter().enumerate() {
            let simple = !path.is_empty()
                && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
                && path.iter().enumerate().all(|(k, v)| !path[..k].contains(v));
            if !simple {
                out.push(Hypothesis::NotAPath { system, path: j });
                continue;
            }
            let last = path.len() - 1;
            let ends_ok = own.contains(&path[0]) && b.contains(&path[last]);
            let clean =
                path.iter().enumerate().all(|(k, v)| (k == 0 || !own.contains(v)) && (k == last || !b.contains(v)));
            if !ends_ok || !clean {
                out.push(Hypothesis::WrongEnds { system, path: j });
            }
            if let Some(&v) = path.iter().find(|v| other.contains(v)) {
                out.push(Hypothesis::TouchesOtherSide { system, path: j, vertex: v });
            }
        }
        let mut owner = vec![usize::MAX; n];
        let mut count = vec![0usize; n];
        for (j, path) in sys.iter().enumerate() {
            for &v in path {
                if own.contains(&v) {
                    count[v] += 1;
                } else if owner[v] != usize::MAX && owner[v] != j {
                    out.push(Hypothesis::Overlap { system, first: owner[v], second: j, vertex: v });
                } else {
                    owner[v] = j;
                }
            }
        }
        for &v in own {
            if count[v] != 2 {
                out.push(Hypothesis::Multiplicity { system, vertex: v, paths: count[v] });
            }
        }
    }
    out
}
