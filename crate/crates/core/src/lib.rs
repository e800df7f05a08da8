//! Localized clique-count bounds on small graphs.
//!
//! The crate counts cliques exactly, computes per-vertex degree weights and
//! per-edge longest-path / longest-cycle weights, evaluates classical and
//! localized upper bounds on `N(G, K_t)` as exact rationals, checks the
//! structural conditions under which those bounds are tight, and sweeps
//! graph families looking for violations and tight instances.

pub mod analysis;
pub mod binom;
pub mod blocks;
pub mod bounds;
pub mod cliques;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod graph6;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod ratio;
pub mod search;
pub mod weights;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexSet};
pub use ratio::ExactRatio;
