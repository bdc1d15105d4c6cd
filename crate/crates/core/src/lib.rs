//! Weak r-guidance systems.
//!
//! A weak r-guidance system of a graph is a partial orientation such that every
//! pair of vertices at distance at most r is joined by a shortest path whose
//! edges, all but one, point towards that exceptional edge. With bounded
//! maximum outdegree such an orientation answers distance-at-most-r queries
//! while taking about as much space as the graph itself.
//!
//! The crate is organised by role:
//!
//! * [`graph`]: graphs, orientations, truncated distance tables, gate sets.
//! * [`verify`]: checkers for every guidance notion, dual lower bounds,
//!   exhaustive optima and VC-dimension measurement.
//! * [`lp`]: the fractional guidance linear program and a simplex solver.
//! * [`synthesize`]: LP rounding, hitting-set rounding,
//!   degenerate completion, power lift, interval graphs, cut composition and
//!   tree models.
//! * [`generators`]: instance families with their structural checkers.
//! * [`query`]: deterministic and randomized distance queries.
//! * [`domination`]: r-domination / 2r-independence approximation.
//! * [`io`]: the line-oriented text formats.

pub mod domination;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod lp;
pub mod query;
pub mod rng;
pub mod synthesize;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{
    DegeneracyOrder, DistanceIndex, FractionalOrientation, Graph, MaxOutdegree,
    PartialOrientation, Radius,
};
