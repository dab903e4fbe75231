//! Single-source shortest paths with negative real edge lengths.
//!
//! The entry point is [`solver::solve`], which takes any [`Graph`] and returns
//! either exact distances from a source or a negative cycle. The building
//! blocks are public too: [`base`] has the exact primitives and the
//! brute-force oracles, [`layered`] the negative-edge sparsifier, [`remote`]
//! the remote-set extraction, and [`bootstrap`] the hop-reducer machinery.

pub mod base;
pub mod error;
pub mod graph;
pub mod stats;

pub use base::{NegativeCycle, Potential};
pub use error::{DimacsError, GenError, GraphError, SolveError};
pub use graph::{Edge, Graph};

pub mod bootstrap;
pub mod cli;
pub mod layered;
pub mod params;
pub mod remote;
pub mod solver;

pub use solver::{neutralize, solve, Algorithm, Solution, SolverConfig};
