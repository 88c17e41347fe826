//! Approximation pipeline for the minimum-cost 2-vertex-connected subgraph
//! problem with a terminal-weight target (k-2VC).
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: stable-id weighted graphs, connectivity tests, disjoint paths,
//!   cycle contraction.
//! * [`cycle`]: density-based cycle extraction (parametric minimum-density
//!   cycles, ear improvement, earring deletion).
//! * [`dens2vc`]: the density LP, bucketing, and 2-approximate rounding for
//!   fixed terminal sets.
//! * [`prune`]: cluster merging and window extraction.
//! * [`oracle`]: brute-force reference solvers for small instances.
//! * [`driver`]: instance format, greedy solver, verification, generators.
//!
//! Costs and weights are fixed-point integers scaled by [`SCALE`].

pub mod cycle;
pub mod dens2vc;
pub mod driver;
pub mod error;
pub mod flow;
pub mod graph;
pub mod lp;
pub mod matching;
pub mod numeric;
pub mod oracle;
pub mod prune;
pub mod solution;

pub use error::{Error, Result};
pub use graph::{build_graph, Cycle, Edge, EdgeId, Graph, PathPair, VertexId};
pub use numeric::{Ratio, SCALE};
pub use solution::{Certificate, Solution};
