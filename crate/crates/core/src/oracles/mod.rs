//! Exact, certificate-producing oracles.
//!
//! Each oracle states its size limit and refuses larger inputs with
//! [`OracleError::TooLarge`]; approximate modes live in separate functions.
//! All of them are pure functions of their arguments.

mod chromatic;
mod flow;
mod hadwiger;
mod hall;
mod independence;
mod paths;
mod rooted;
mod separability;
mod woven;

pub use chromatic::{chromatic_number, chromatic_number_with_budget, Chromatic, CHROMATIC_LIMIT};
pub use flow::{
    connectivity_at_least, local_connectivity, menger, menger_avoiding, vertex_connectivity, Connectivity,
    MengerLinkage,
};
pub use hadwiger::{
    find_complete_minor, hadwiger_bounds, hadwiger_number, has_complete_minor, Hadwiger, MinorSearch, HADWIGER_LIMIT,
};
pub use hall::{alpha_table, hall_ratio, hall_ratio_lower_bound, HallRatio, HALL_LIMIT};
pub use independence::{
    clique_number, independence_number, max_clique, max_independent_set_within, IndependentSet, INDEPENDENCE_LIMIT,
};
pub use paths::{disjoint_paths, LinkageOutcome, PATHS_DEFAULT_BUDGET};
pub use rooted::{rooted_complete_model, RootedOutcome};
pub use separability::{chi_table, chromatic_separability, Separability, SEPARABILITY_LIMIT};
pub use woven::{is_woven, woven_instance, WeaveOutcome, WovenCounterexample, WovenMode, WovenVerdict};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum OracleError {
    #[error("{oracle} is exact only for at most {limit} vertices (got {n})")]
    TooLarge { oracle: String, n: usize, limit: usize },
    #[error("{oracle} exhausted its budget of {budget} nodes")]
    BudgetExhausted { oracle: String, budget: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub(crate) fn too_large(oracle: &str, n: usize, limit: usize) -> OracleError {
    OracleError::TooLarge { oracle: oracle.to_string(), n, limit }
}

pub(crate) fn bits(mask: u64) -> crate::graph::BitIter {
    crate::graph::BitIter(mask)
}

pub(crate) fn to_mask(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &v| m | (1u64 << v))
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn mask_vertices(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}
