//! Rooted density problem: find a subgraph minimising cost per unit of
//! terminal weight 2-connected to the root.
//!
//! The pipeline solves a flow-based LP relaxation, groups terminals into
//! geometric buckets by their fractional coverage, and rounds the heaviest
//! bucket with an iterative-rounding 2-approximation for the fixed-terminal
//! problem.

mod bucket;
mod lp_dens;
mod rounding;
mod separation;

pub use bucket::{bucket_select, BucketEntry, BucketSelection};
pub use lp_dens::{solve_lp_dens, FractionalDensSolution};
pub use rounding::{min_cost_2vc_subgraph, TwoVcSubgraph};
pub use separation::{separation_oracle, violated_cuts, CutConstraint};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::numeric::{to_natural, Ratio};
use crate::solution::Solution;

/// Output of [`dens_2vc`] with the quantities needed to audit its bound.
#[derive(Clone, Debug)]
pub struct Dens2vcOutcome {
    pub solution: Solution,
    /// Cost over the weight of terminals (other than the root) that are
    /// 2-connected to the root in the solution.
    pub density: Ratio,
    /// Optimal value of the density LP, in natural units.
    pub lp_density: f64,
    pub bucket: BucketSelection,
    /// Fractional value of the rounding LP for the chosen bucket.
    pub rounding_lp: f64,
    pub bound: Dens2vcBound,
}

/// The two density guarantees, recorded rather than asserted.
#[derive(Clone, Debug, PartialEq)]
pub struct Dens2vcBound {
    /// `density <= 4 * lp_density / bucket_mass`.
    pub per_bucket: bool,
    /// `density <= 4 * B * lp_density` with `B = max(1, 2 ceil(log2 l))`.
    pub logarithmic: bool,
}

pub fn dens_2vc(g: &Graph, r: VertexId) -> Result<Dens2vcOutcome> {
    let frac = solve_lp_dens(g, r)?;
    // with weights, terminals count in units of the lightest one
    let units = frac.relative_weight.iter().sum::<f64>().ceil() as usize;
    let bucket = bucket_select(&frac.bucket_entries(), units.max(frac.terminals.len()));
    if bucket.terminals.is_empty() {
        return Err(Error::Internal("empty bucket".into()));
    }
    let rounded = min_cost_2vc_subgraph(g, &bucket.terminals, r)?;
    let solution = Solution::rooted(g, &rounded.edges, r)?;
    let weight = solution.covered_weight();
    let density = Ratio::checked(solution.cost as i128, weight as i128)
        .ok_or_else(|| Error::Internal("rounded subgraph covers no terminal".into()))?;
    let lp = frac.lp_density();
    let d = density.to_f64();
    let tol = 1e-6 * (1.0 + lp);
    let bound = Dens2vcBound {
        per_bucket: bucket.mass > 0.0 && d <= 4.0 * lp / bucket.mass + tol,
        logarithmic: d <= 4.0 * bucket.bucket_count as f64 * lp + tol,
    };
    Ok(Dens2vcOutcome { solution, density, lp_density: lp, bucket, rounding_lp: rounded.lp_value, bound })
}

pub(crate) fn natural_cost(c: i64) -> f64 {
    to_natural(c)
}
