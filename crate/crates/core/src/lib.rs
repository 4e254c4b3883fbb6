//! Unique-neighbor expanders: construction through the routed product,
//! exhaustive and sampled certification, and the expander codes built on them.

pub mod codes;
pub mod compose;
pub mod error;
pub mod graph;
pub mod inner;
mod par;
pub mod report;
pub mod rng;
pub mod spectral;
pub mod subsets;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, RegularGraph, Side, VertexSubset};
