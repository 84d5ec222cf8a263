//! Minimum-leaf spanning trees of connected cubic graphs.
//!
//! The crate covers graph representation and interchange ([`graph`], [`graph6`],
//! [`blocks`]), spanning-tree values and leaf-reducing exchanges ([`tree`]),
//! closed-form bounds and classical sufficient conditions ([`bounds`]), an exact
//! solver with certificates ([`solver`]), local search ([`heuristic`]), the
//! branch-doubling extremal family ([`family`]), exhaustive generation of cubic
//! graphs ([`enumerate`]) and batch verification ([`verify`]).

pub mod blocks;
pub mod bounds;
pub mod budget;
pub mod canon;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod heuristic;
pub mod solver;
pub mod tree;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::{Edge, Graph, Vertex};
pub use solver::{min_leaf_spanning_tree, SolveOutcome, SolveStatus};
pub use tree::{LeafStats, SpanningTree};
