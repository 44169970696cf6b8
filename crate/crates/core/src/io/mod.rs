//! Table input, trace documents and tree export.

pub mod fixture;
mod table;
mod trace;
mod tree;

pub use table::{dataset_sha256, parse_table, write_table};
pub use trace::{read_trace, write_trace, RunMetadata, Trace, TraceDocument, TRACE_FORMAT};
pub use tree::{write_dot, write_tree_text};
