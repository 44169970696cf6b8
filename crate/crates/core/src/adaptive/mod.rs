//! The adaptive mean-linkage engine.
//!
//! Each iteration:
//!
//! 1. computes the cut-off distance `max_i min_{j != i} d(i, j)` over the
//!    active points;
//! 2. builds every point's neighbourhood (points within the cut-off,
//!    nearest first, the point itself leading);
//! 3. finds the maximal *extremely close* sets, i.e. sets `S` of size `v`
//!    where each member's first `v` neighbours are exactly `S`;
//! 4. replaces each set with a pseudo-point at the mean of its members.
//!
//! The loop stops when a single pseudo-point remains. Column statistics are
//! fixed once, before the first iteration.

mod neighborhood;
mod state;

pub use neighborhood::{
    cutoff_distance, extremely_close_sets, neighborhood, sub_neighborhood, MergeGroup,
    Neighborhood,
};
pub use state::{ClusterState, PseudoPoint};

use crate::data::NormalizedDataset;
use crate::dendrogram::Dendrogram;
use crate::{Error, Result, DISTANCE_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    /// Distances closer than this are treated as tied when ordering a
    /// neighbourhood (ties resolve by point index) and when testing
    /// membership in the cut-off. `0.0` compares bit-exactly.
    pub tie_tolerance: f64,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            tie_tolerance: DISTANCE_TOLERANCE,
        }
    }
}

/// Runs the adaptive algorithm to a single root.
pub fn build_dendrogram(nd: &NormalizedDataset) -> Result<Dendrogram> {
    build_dendrogram_with(nd, AdaptiveOptions::default())
}

pub fn build_dendrogram_with(nd: &NormalizedDataset, options: AdaptiveOptions) -> Result<Dendrogram> {
    let mut state = ClusterState::with_options(nd, options)?;
    let mut trace = Vec::new();
    while state.len() > 1 {
        if trace.len() >= nd.len() {
            return Err(Error::Invariant("adaptive run did not terminate".into()));
        }
        let (next, record) = state.cluster_step()?;
        trace.push(record);
        state = next;
    }
    Dendrogram::from_trace(nd.labels().to_vec(), trace)
}
