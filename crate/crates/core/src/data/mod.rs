//! Raw descriptor tables, z-score normalisation and Euclidean distances.

mod dataset;
mod distance;
mod normalize;

pub use dataset::Dataset;
pub use distance::{euclidean_distance, DistanceMatrix};
pub use normalize::{NormalizationStats, NormalizedDataset, SdMode};
