//! Minor-model and linkage machinery: verification of (rooted, cored,
//! tangent) models, Menger flows, redundant path systems, the Steiner
//! skeleton and the weave composition.

mod redundant;
mod steiner;
mod weave;

pub mod instances;

pub use redundant::{redundant_menger_paths, Hypothesis, RedundantPaths};
pub use steiner::{steiner_skeleton, Attachment, Skeleton};
pub use weave::{weave, Weave, WovenCertificate};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::model::{CoredModel, MinorModel};
use crate::oracles::{self, OracleError};
use crate::verify::{self, CoreTangentVerdict, LinkageViolation, ModelViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum LinkageError {
    #[error("vertex {vertex} is outside the host ({n} vertices)")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("{0} must be non-empty")]
    Empty(&'static str),
    #[error("host graph is disconnected")]
    Disconnected,
    #[error("hypotheses violated: {}", .0.len())]
    Hypotheses(Vec<Hypothesis>),
    #[error("input linkage is invalid")]
    InvalidLinkage(Vec<LinkageViolation>),
    #[error("woven certificate rejected: {0}")]
    Certificate(String),
    #[error("roots must be {expected} distinct vertices of the woven subgraph")]
    BadRoots { expected: usize },
    /// Hypotheses held but the promised object was not found; this is the
    /// artifact a falsified statement would leave behind.
    #[error("counterexample: {0}")]
    Counterexample(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelVerdict {
    pub valid: bool,
    pub violations: Vec<ModelViolation>,
}

pub fn verify_minor_model(host: &Graph, model: &MinorModel) -> ModelVerdict {
    let violations = verify::check_minor_model(host, model);
    ModelVerdict { valid: violations.is_empty(), violations }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoredVerdict {
    pub model: ModelVerdict,
    #[serde(flatten)]
    pub clauses: CoreTangentVerdict,
}

impl CoredVerdict {
    pub fn valid(&self) -> bool {
        self.model.valid && self.clauses.core_ok && self.clauses.tangent_ok
    }
}

pub fn verify_core_tangent(host: &Graph, cm: &CoredModel) -> CoredVerdict {
    CoredVerdict { model: verify_minor_model(host, &cm.model), clauses: verify::check_core_tangent(host, cm) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Menger {
    pub value: usize,
    pub paths: Vec<Vec<Vertex>>,
    pub separator: Vec<Vertex>,
}

/// Maximum family of disjoint `A`-`B` paths and a minimum separator. Both
/// certificates are re-checked and their sizes compared before returning.
pub fn menger(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Result<Menger, LinkageError> {
    if a.is_empty() {
        return Err(LinkageError::Empty("A"));
    }
    if b.is_empty() {
        return Err(LinkageError::Empty("B"));
    }
    in_range(g, a.iter().chain(b))?;
    let m = oracles::menger(g, a, b);
    let problems = ab_path_problems(g, a, b, &m.paths);
    if !problems.is_empty() {
        return Err(LinkageError::Counterexample(format!("flow paths fail re-verification: {problems:?}")));
    }
    if !verify::separates_sets(g, a, b, &m.separator) {
        return Err(LinkageError::Counterexample("flow separator does not separate".into()));
    }
    if m.paths.len() != m.separator.len() {
        return Err(LinkageError::Counterexample(format!(
            "{} paths against a separator of size {}",
            m.paths.len(),
            m.separator.len()
        )));
    }
    Ok(Menger { value: m.paths.len(), paths: m.paths, separator: m.separator })
}

pub(crate) fn in_range<'a>(g: &Graph, vs: impl IntoIterator<Item = &'a Vertex>) -> Result<(), LinkageError> {
    let n = g.vertex_count();
    match vs.into_iter().find(|&&v| v >= n) {
        Some(&vertex) => Err(LinkageError::VertexOutOfRange { vertex, n }),
        None => Ok(()),
    }
}

/// Problems with a claimed family of pairwise disjoint `A`-`B` paths: each
/// must be a path in `g`, start in `A`, end in `B`, and meet `A ∪ B` nowhere
/// else.
pub fn ab_path_problems(g: &Graph, a: &[Vertex], b: &[Vertex], paths: &[Vec<Vertex>]) -> Vec<String> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut used = vec![false; n];
    for (i, p) in paths.iter().enumerate() {
        if p.is_empty() || p.iter().any(|&v| v >= n) {
            out.push(format!("path {i} is empty or leaves the host"));
            continue;
        }
        if !a.contains(&p[0]) || !b.contains(&p[p.len() - 1]) {
            out.push(format!("path {i} does not run from A to B"));
        }
        if p.len() > 1
            && p.iter().enumerate().any(|(j, v)| (j > 0 && a.contains(v)) || (j + 1 < p.len() && b.contains(v)))
        {
            out.push(format!("path {i} meets A or B internally"));
        }
        for (j, &v) in p.iter().enumerate() {
            if j > 0 && !g.has_edge(p[j - 1], v) {
                out.push(format!("path {i} uses the non-edge {}{}", p[j - 1], v));
            }
            if used[v] {
                out.push(format!("vertex {v} is used twice"));
            }
            used[v] = true;
        }
    }
    out
}
