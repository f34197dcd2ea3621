//! Structure extraction: peeling, highly connected subgraphs, and the
//! contraction process.

mod connect;
mod dense;
mod disjoint;
mod peel;

pub use connect::{
    high_chromatic_connected_subgraph, k_connected_pieces, k_connected_subgraph, k_connected_subgraph_within,
    k_core_within, mader_connected_subgraph, ConnectError, ConnectedPiece, HighChromaticOutcome, MaderOutcome,
};
pub use dense::{
    contraction_loss, small_dense_subgraph, ContractionStep, ExtractionError, ExtractionOutcome, ExtractionReport,
    ExtractionTrace, Harvest, RoundTrace, MINOR_FALLBACK_BUDGET,
};
pub use disjoint::{extract_disjoint_connected_subgraphs, DisjointExtraction};
pub use peel::{
    peel_potential, satisfies_special_clauses, special_instance, special_subset, PeelError, PeelReason, PeelStep,
    SpecialInstance, SpecialSubset,
};
