use std::collections::{BTreeMap, BTreeSet};

use super::merge::{ClusterForest, ClusterId, ClusterStatus};
use super::PruneParams;
use crate::graph::{is_two_connected, EdgeId, Graph};
use crate::numeric::Ratio;

/// Cost split of a large cluster into the edges of the cycles used in the
/// iteration that formed it (final) and everything inherited (penultimate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargeClusterAccounting {
    pub cluster: ClusterId,
    /// Iteration that formed the cluster; `None` for a single heavy terminal.
    pub kind: Option<usize>,
    pub final_stage: Vec<ClusterId>,
    pub penultimate: Vec<ClusterId>,
    pub final_edges: BTreeSet<EdgeId>,
    pub penultimate_edges: BTreeSet<EdgeId>,
    pub weight: i64,
    pub cost: i64,
    pub final_cost: i64,
    pub penultimate_cost: i64,
}

impl LargeClusterAccounting {
    pub fn density(&self) -> Ratio {
        Ratio::new(self.cost as i128, self.weight as i128)
    }

    pub fn penultimate_density(&self) -> Ratio {
        Ratio::new(self.penultimate_cost as i128, self.weight as i128)
    }
}

pub fn large_cluster_accounting(g: &Graph, forest: &ClusterForest, id: ClusterId) -> LargeClusterAccounting {
    let y = &forest.clusters[id];
    let kind = y.formed_in;
    let mut final_stage = Vec::new();
    let mut penultimate = Vec::new();
    let mut final_edges = BTreeSet::new();
    match kind {
        None => penultimate.push(id),
        Some(i) => {
            let mut stack = vec![id];
            while let Some(x) = stack.pop() {
                let cl = &forest.clusters[x];
                final_stage.push(x);
                if let Some(m) = &cl.merge {
                    final_edges.extend(m.host_edges());
                }
                for &c in &cl.children {
                    if forest.clusters[c].formed_in == Some(i) {
                        stack.push(c);
                    } else {
                        penultimate.push(c);
                    }
                }
            }
        }
    }
    final_stage.sort_unstable();
    penultimate.sort_unstable();
    let penultimate_edges: BTreeSet<EdgeId> = y.edges.difference(&final_edges).copied().collect();
    LargeClusterAccounting {
        cluster: id,
        kind,
        final_stage,
        penultimate,
        weight: y.weight,
        cost: g.cost_of(y.edges.iter()),
        final_cost: g.cost_of(final_edges.iter()),
        penultimate_cost: g.cost_of(penultimate_edges.iter()),
        final_edges,
        penultimate_edges,
    }
}

/// Outcome of checking the merging guarantees on a finished forest. Checks
/// whose hypothesis does not hold are `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    /// Every cluster with an edge is a 2-connected subgraph.
    pub clusters_two_connected: bool,
    /// No cluster weighs more than the terminals it contains.
    pub weight_within_terminals: bool,
    /// Small clusters never shared an edge.
    pub small_edge_disjoint: bool,
    /// Per iteration: unmerged weight `<= l / (2 ceil(log2 k))`.
    pub leftover: Vec<bool>,
    /// Large clusters weigh at least `l / 2`, checked when `l > 8 k ceil(log2 k)`.
    pub large_weight: Option<bool>,
    /// `cost(Y) <= (i + 1) alpha w_Y` for a cluster formed in iteration `i`.
    pub tier_cost: bool,
    /// `final cost(Y) <= alpha w_Y` for every large cluster.
    pub final_cost: bool,
    /// `cost(Y) = final cost + penultimate cost` for every large cluster.
    pub cost_split: bool,
    /// Large clusters formed in the same iteration share no penultimate edge.
    pub penultimate_disjoint: bool,
    /// Some large cluster has density `<= 4 ceil(log2 k) rho`, checked when
    /// the large clusters weigh at least `l / 2`.
    pub good_large_cluster: Option<bool>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.clusters_two_connected
            && self.weight_within_terminals
            && self.small_edge_disjoint
            && self.leftover.iter().all(|&b| b)
            && self.large_weight != Some(false)
            && self.tier_cost
            && self.final_cost
            && self.cost_split
            && self.penultimate_disjoint
            && self.good_large_cluster != Some(false)
    }

    /// Names of the checks that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut push = |ok: bool, name| {
            if !ok {
                out.push(name)
            }
        };
        push(self.clusters_two_connected, "clusters_two_connected");
        push(self.weight_within_terminals, "weight_within_terminals");
        push(self.small_edge_disjoint, "small_edge_disjoint");
        push(self.leftover.iter().all(|&b| b), "leftover");
        push(self.large_weight != Some(false), "large_weight");
        push(self.tier_cost, "tier_cost");
        push(self.final_cost, "final_cost");
        push(self.cost_split, "cost_split");
        push(self.penultimate_disjoint, "penultimate_disjoint");
        push(self.good_large_cluster != Some(false), "good_large_cluster");
        out
    }
}

/// Checks the forest produced on `g` against the guarantees of the merging
/// procedure, using exact integer arithmetic.
pub fn check_lemmas(g: &Graph, forest: &ClusterForest, params: &PruneParams) -> LemmaReport {
    let alpha = forest.alpha;
    let lk = params.log_k() as i128;
    let ell = forest.total_weight as i128;
    let k = params.k as i128;

    let mut clusters_two_connected = true;
    let mut weight_within_terminals = true;
    let mut tier_cost = true;
    let mut small_edges: BTreeSet<EdgeId> = BTreeSet::new();
    let mut small_edge_disjoint = !forest.small_overlap;
    for cl in &forest.clusters {
        if !cl.edges.is_empty() && !is_two_connected(&g.restrict_to_edges(cl.edges.iter())) {
            clusters_two_connected = false;
        }
        let inside: i64 = cl.vertices.iter().map(|&v| g.weight(v)).sum();
        if cl.weight > inside {
            weight_within_terminals = false;
        }
        if let Some(i) = cl.formed_in {
            let cost = g.cost_of(cl.edges.iter()) as i128;
            if cost * alpha.denom() > (i as i128 + 1) * alpha.numer() * cl.weight as i128 {
                tier_cost = false;
            }
        }
        if cl.status == ClusterStatus::Small {
            for &e in &cl.edges {
                if !small_edges.insert(e) {
                    small_edge_disjoint = false;
                }
            }
        }
    }

    let leftover = forest.leftover.iter().map(|&w| w as i128 * 2 * lk <= ell).collect();

    let large = forest.large();
    let large_weight_sum = forest.large_weight() as i128;
    let large_weight = (ell > 8 * k * lk).then_some(2 * large_weight_sum >= ell);

    let acc: Vec<LargeClusterAccounting> = large.iter().map(|&y| large_cluster_accounting(g, forest, y)).collect();
    let final_cost = acc.iter().all(|a| a.final_cost as i128 * alpha.denom() <= alpha.numer() * a.weight as i128);
    let cost_split = acc.iter().all(|a| a.cost == a.final_cost + a.penultimate_cost);

    let mut penultimate_disjoint = true;
    let mut by_kind: BTreeMap<usize, BTreeSet<EdgeId>> = BTreeMap::new();
    for a in &acc {
        let Some(i) = a.kind else { continue };
        let seen = by_kind.entry(i).or_default();
        for &e in &a.penultimate_edges {
            if !seen.insert(e) {
                penultimate_disjoint = false;
            }
        }
    }

    let good_large_cluster = (!acc.is_empty() && 2 * large_weight_sum >= ell).then(|| {
        let bound = params.rho.scale(4 * lk);
        acc.iter().any(|a| a.density() <= bound)
    });

    LemmaReport {
        clusters_two_connected,
        weight_within_terminals,
        small_edge_disjoint,
        leftover,
        large_weight,
        tier_cost,
        final_cost,
        cost_split,
        penultimate_disjoint,
        good_large_cluster,
    }
}
