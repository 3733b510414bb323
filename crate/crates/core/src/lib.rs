//! Edge-Erdos-Posa machinery for ladders.
//!
//! Condensed walls and the counterexample construction, subdivision search
//! for ladders, houses, thetas, X-wings and linkages, packing-or-hitting
//! solvers for 3-rung ladders and the house, structure classifiers for
//! ladder-free and house-free graphs, and exhaustive checkers.

pub mod budget;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod io;
pub mod patterns;
pub mod solver;
pub mod structure;
pub mod trees;
pub mod verifier;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::{Cycle, EdgeId, EdgeSet, Graph, Path, VertexId};
