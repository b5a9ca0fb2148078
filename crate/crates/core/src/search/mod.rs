//! Randomized matrix search, compatibility graphs, exact cliques, oval-plane
//! enumeration, and the multiplier scan.

mod graph;
mod matrices;
mod multiplier;
mod ovals;

pub use graph::{build_compat_graph, build_plane_graph, max_clique, CompatibilityGraph};
pub use matrices::{
    candidate_matrix_search, is_spread_compatible, partial_rejected, MatrixSearch, SearchOutcome,
};
pub use multiplier::{multiplier_holds, multiplier_scan};
pub use ovals::{enumerate_ovals, oval_planes_search, OvalSearchReport};
