//! Pruning a sparse rooted solution down to a target terminal weight.
//!
//! Terminals are grouped into 2-connected clusters by repeatedly merging the
//! clusters met by cheap cycles, tier by tier. A large cluster of low density
//! then yields a window of consecutive sub-clusters that, joined to the root,
//! covers the target weight.

mod accounting;
mod merge;
mod window;

pub use accounting::{check_lemmas, large_cluster_accounting, LargeClusterAccounting, LemmaReport};
pub use merge::{
    find_good_cycle, merge_clusters, Cluster, ClusterForest, ClusterId, ClusterStatus, CycleVertex, MergeCycle,
    MergeEvent,
};
pub use window::{extract_window_solution, windows, Window, WindowSolution};

use crate::error::{Error, Result};
use crate::graph::{block_decomposition, EdgeId, Graph, VertexId};
use crate::numeric::{ceil_log2_ratio, Ratio, SCALE};
use crate::solution::Solution;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PruneParams {
    /// Target terminal weight (scaled).
    pub k: i64,
    /// Upper bound on the density of the input graph.
    pub rho: Ratio,
    /// Upper bound on the cost of the cheapest disjoint path pair from any
    /// vertex to the root (scaled).
    pub l_bound: i64,
    pub root: VertexId,
}

impl PruneParams {
    /// `max(1, ceil(log2 k))` with `k` in natural units.
    pub fn log_k(&self) -> u32 {
        ceil_log2_ratio(self.k as i128, SCALE as i128).max(1)
    }

    /// The good-cycle threshold `2 ceil(log2 k) rho`.
    pub fn alpha(&self) -> Ratio {
        self.rho.scale(2 * self.log_k() as i128)
    }

    /// `8 ceil(log2 k) rho k + 2 L`, as an exact ratio of scaled cost.
    pub fn cost_bound(&self) -> Ratio {
        let base = self.rho.scale(8 * self.log_k() as i128 * self.k as i128);
        Ratio::new(base.numer() + 2 * self.l_bound as i128 * base.denom(), base.denom())
    }
}

#[derive(Clone, Debug)]
pub struct PruneOutcome {
    pub solution: Solution,
    /// `None` when the terminal weight was already small enough to keep the
    /// whole graph.
    pub forest: Option<ClusterForest>,
    pub selected: Option<ClusterId>,
    pub window: Option<Window>,
    pub within_bound: bool,
}

/// Finds a subgraph in which terminals of weight at least `k` are each
/// 2-connected to the root, of cost at most `8 ceil(log2 k) rho k + 2 L`
/// when the parameters are honest bounds for `g`.
///
/// Only blocks through the root are used; the root's own weight never counts.
pub fn prune(g: &Graph, params: &PruneParams) -> Result<PruneOutcome> {
    prune_in(g, g, params)
}

/// [`prune`] on a subgraph `g` of `host` (same ids): clusters come from `g`,
/// while the paths joining a window to the root may use any edge of `host`.
pub fn prune_in(g: &Graph, host: &Graph, params: &PruneParams) -> Result<PruneOutcome> {
    let r = params.root;
    if !g.contains_vertex(r) {
        return Err(Error::InvalidGraph(format!("root {r} is not a vertex")));
    }
    if params.k <= 0 {
        let solution = Solution::rooted(host, &[], r)?;
        return Ok(PruneOutcome { solution, forest: None, selected: None, window: None, within_bound: true });
    }
    let mut h = g.clone();
    h.set_weight(r, 0)?;
    let blocks: Vec<Vec<EdgeId>> = block_decomposition(&h)
        .into_iter()
        .filter(|b| b.vertices.len() >= 3 && b.vertices.binary_search(&r).is_ok())
        .map(|b| b.edges)
        .collect();
    let used: Vec<EdgeId> = blocks.iter().flatten().copied().collect();
    let work = h.restrict_to_edges(used.iter());
    let ell = work.total_weight();
    if ell < params.k {
        return Err(Error::InfeasibleTarget);
    }
    let bound = params.cost_bound();

    if (ell as i128) <= 8 * params.log_k() as i128 * params.k as i128 {
        let solution = Solution::rooted(host, &used, r)?;
        let within_bound = Ratio::integer(solution.cost as i128) <= bound;
        return Ok(PruneOutcome { solution, forest: None, selected: None, window: None, within_bound });
    }

    let forest = merge::merge_on_blocks(&work, &blocks, params)?;
    let mut order: Vec<LargeClusterAccounting> =
        forest.large().into_iter().map(|y| large_cluster_accounting(&work, &forest, y)).collect();
    order.sort_by(|a, b| a.penultimate_density().cmp(&b.penultimate_density()).then(a.cluster.cmp(&b.cluster)));
    for acc in &order {
        match extract_window_solution(host, &forest, acc.cluster, params) {
            Ok(ws) => {
                let within_bound = Ratio::integer(ws.solution.cost as i128) <= bound;
                return Ok(PruneOutcome {
                    solution: ws.solution,
                    selected: Some(acc.cluster),
                    window: Some(ws.window),
                    forest: Some(forest),
                    within_bound,
                });
            }
            Err(Error::WindowNotFound) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::WindowNotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn small_weight_keeps_everything() {
        let s = SCALE;
        let g = build_graph(4, &[(0, 1, s), (1, 2, s), (2, 3, s), (3, 0, s)], &[(0, s), (1, s), (2, s), (3, s)], None)
            .unwrap();
        let params = PruneParams { k: 2 * s, rho: Ratio::integer(1), l_bound: 4 * s, root: 0 };
        let out = prune(&g, &params).unwrap();
        assert!(out.forest.is_none());
        assert_eq!(out.solution.cost, 4 * s);
        assert_eq!(out.solution.covered_weight(), 3 * s);
        assert!(out.within_bound);
    }

    #[test]
    fn alpha_is_twice_log_k_rho() {
        let p = PruneParams { k: 5 * SCALE, rho: Ratio::new(7, 3), l_bound: 0, root: 0 };
        assert_eq!(p.log_k(), 3);
        assert_eq!(p.alpha(), Ratio::new(14, 1));
    }
}
