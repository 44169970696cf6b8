/*!
Adaptive mean-linkage agglomerative clustering.

At every iteration the engine computes a minimax cut-off distance (the
largest nearest-neighbour distance among the active points), builds each
point's ordered neighbourhood inside that cut-off, and merges every
*extremely close* set in a single step: a set `S` of `v` points where each
member's first `v` neighbours are exactly `S`. Merged points are replaced by
a pseudo-point at the mean of their coordinates, and the loop repeats until
one pseudo-point remains.

The crate is organised as follows:

* [`data`]: datasets, z-score normalisation and the condensed distance matrix.
* [`adaptive`]: the adaptive engine ([`adaptive::build_dendrogram`]).
* [`baseline`]: classical stepwise linkage (single, complete, average,
  centroid) and a compactness comparison.
* [`dendrogram`]: the tree and per-depth trace shared by both engines.
* [`io`]: table parsing, trace documents, DOT and text export, and the bundled
  substituent fixture.
* [`cli`]: the command-line front end.

```
use adaptive_linkage::{adaptive, data::SdMode, io::fixture::Fixture};

let data = Fixture::Para.dataset();
let normalized = data.normalize(SdMode::Sample).unwrap();
let tree = adaptive::build_dendrogram(&normalized).unwrap();
assert_eq!(tree.root_leaves().len(), 25);
```
*/

pub mod adaptive;
pub mod baseline;
pub mod cli;
pub mod data;
pub mod dendrogram;
mod error;
pub mod io;

pub use error::{Error, Result};

/// Absolute tolerance used for every distance comparison.
pub const DISTANCE_TOLERANCE: f64 = 1e-9;
