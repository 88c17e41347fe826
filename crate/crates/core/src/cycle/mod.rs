//! Cycles of low density: exact parametric search, ear-based improvement,
//! earring deletion, and the LP-backed approximation for non-trivial cycles.

mod approx;
mod deletion;
mod ear;
mod earring;
mod ratio;

pub use approx::{approx_min_density_nontrivial_cycle, approx_min_density_nontrivial_cycle_with, ApproxCycleOptions};
pub use deletion::{avg_density_cycle_deletion, avg_density_cycle_deletion_traced, DeletionTrace};
pub use ear::{arbitrary_nontrivial_cycle, avg_density_cycle_recursive, improve_with_ear, Ear};
pub use earring::{delete_segment, earring_decomposition, safe_segment, Earring, EarringDecomposition, Segment};
pub use ratio::{min_density_cycle_parametric, min_zero_join};
