use std::collections::{BTreeMap, BTreeSet};

use super::PruneParams;
use crate::cycle::avg_density_cycle_deletion;
use crate::error::{Error, Result};
use crate::graph::{is_two_connected, Cycle, EdgeId, Graph, VertexId};
use crate::numeric::{floor_log2_ratio, Ratio, SCALE};

pub type ClusterId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterStatus {
    Small,
    Large,
    /// Absorbed into its parent.
    Merged,
}

/// A vertex of a merge cycle: either a vertex of the host graph or the
/// temporary terminal standing in for a cluster.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleVertex {
    Host(VertexId),
    Dummy(ClusterId),
}

/// The cycle that formed a cluster. `edges[i]` joins `vertices[i]` and
/// `vertices[i + 1]` (cyclically); `None` marks an edge to a stand-in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeCycle {
    pub vertices: Vec<CycleVertex>,
    pub edges: Vec<Option<EdgeId>>,
    pub cost: i64,
    /// Weight of the clusters that paid for the cycle.
    pub active_weight: i64,
}

impl MergeCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn host_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().flatten().copied()
    }
}

#[derive(Clone, Debug)]
pub struct Cluster {
    pub id: ClusterId,
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
    pub weight: i64,
    pub status: ClusterStatus,
    /// Iteration that formed the cluster; `None` for the initial terminals.
    pub formed_in: Option<usize>,
    pub merge: Option<MergeCycle>,
    pub children: Vec<ClusterId>,
    pub parent: Option<ClusterId>,
    /// Index of the block of the host graph the cluster lives in.
    pub block: usize,
}

impl Cluster {
    /// `floor(log2(w))` in natural weight units, clamped at zero.
    pub fn tier(&self) -> u32 {
        floor_log2_ratio(self.weight as i128, SCALE as i128)
    }

    pub fn is_leaf(&self) -> bool {
        self.merge.is_none()
    }

    pub fn merge_cost(&self) -> i64 {
        self.merge.as_ref().map_or(0, |m| m.cost)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeEvent {
    pub iteration: usize,
    pub cluster: ClusterId,
    pub children: Vec<ClusterId>,
    pub cost: i64,
    pub active_weight: i64,
}

/// Merge history. Leaves are the original terminals; each inner node is a
/// cluster formed from its children by one cycle.
#[derive(Clone, Debug)]
pub struct ClusterForest {
    pub clusters: Vec<Cluster>,
    pub iterations: usize,
    pub alpha: Ratio,
    pub events: Vec<MergeEvent>,
    /// Per iteration, the weight of the clusters that could pay for cycles
    /// but were never merged.
    pub leftover: Vec<i64>,
    /// Total terminal weight and edge cost of the graph that was processed.
    pub total_weight: i64,
    pub total_cost: i64,
    /// Set if a newly formed small cluster ever shared an edge with another
    /// small cluster.
    pub small_overlap: bool,
}

impl ClusterForest {
    pub fn large(&self) -> Vec<ClusterId> {
        self.clusters.iter().filter(|c| c.status == ClusterStatus::Large).map(|c| c.id).collect()
    }

    pub fn large_weight(&self) -> i64 {
        self.large().iter().map(|&c| self.clusters[c].weight).sum()
    }

    /// Original terminals below `id`, in id order.
    pub fn leaves(&self, id: ClusterId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(c) = stack.pop() {
            let cl = &self.clusters[c];
            if cl.is_leaf() {
                out.extend(cl.vertices.iter().copied());
            }
            stack.extend(cl.children.iter().copied());
        }
        out.sort_unstable();
        out
    }
}

/// A non-trivial cycle of density at most `alpha`, or `None`. The cycle comes
/// from the average-density finder, so `None` implies `dens(g) > alpha`.
pub fn find_good_cycle(g: &Graph, alpha: Ratio) -> Result<Option<Cycle>> {
    if g.terminal_count() < 2 {
        return Ok(None);
    }
    let c = avg_density_cycle_deletion(g)?;
    let good = (c.cost as i128) * alpha.denom() <= alpha.numer() * c.weight as i128;
    Ok(good.then_some(c))
}

/// Runs the cluster merging procedure on a 2-connected graph. Every terminal
/// of `g` starts as its own cluster.
pub fn merge_clusters(g: &Graph, params: &PruneParams) -> Result<ClusterForest> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    merge_on_blocks(g, &[edges], params)
}

fn debug_checks() -> bool {
    std::env::var("K2VC_DEBUG_ASSERT").is_ok_and(|v| v == "1")
}

/// Runs the merging independently inside each given 2-connected edge set,
/// sharing one forest and one threshold. Cycles never leave a block, so this
/// is the same procedure as on the union.
pub(crate) fn merge_on_blocks(g: &Graph, blocks: &[Vec<EdgeId>], params: &PruneParams) -> Result<ClusterForest> {
    let iterations = params.log_k() as usize;
    let alpha = params.alpha();
    let checks = debug_checks();

    let mut works: Vec<Graph> = Vec::with_capacity(blocks.len());
    let mut clusters: Vec<Cluster> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut total_cost = 0;
    for (b, edges) in blocks.iter().enumerate() {
        let mut w = g.restrict_to_edges(edges.iter());
        total_cost += w.total_cost();
        for v in w.vertices().collect::<Vec<_>>() {
            let weight = g.weight(v);
            if weight > 0 && seen.insert(v) {
                let id = clusters.len();
                clusters.push(Cluster {
                    id,
                    vertices: BTreeSet::from([v]),
                    edges: BTreeSet::new(),
                    weight,
                    status: if weight >= params.k { ClusterStatus::Large } else { ClusterStatus::Small },
                    formed_in: None,
                    merge: None,
                    children: Vec::new(),
                    parent: None,
                    block: b,
                });
            }
            w.set_weight(v, 0)?;
        }
        works.push(w);
    }
    let total_weight = clusters.iter().map(|c| c.weight).sum();

    let mut forest = ClusterForest {
        clusters,
        iterations,
        alpha,
        events: Vec::new(),
        leftover: vec![0; iterations],
        total_weight,
        total_cost,
        small_overlap: false,
    };
    // Edge -> the unique small cluster containing it.
    let mut owner: BTreeMap<EdgeId, ClusterId> = BTreeMap::new();

    for i in 0..iterations {
        for (b, work) in works.iter_mut().enumerate() {
            let active: Vec<ClusterId> = forest
                .clusters
                .iter()
                .filter(|c| {
                    c.block == b
                        && c.status == ClusterStatus::Small
                        && c.tier() as usize == i
                        && c.formed_in.is_none_or(|f| f < i)
                })
                .map(|c| c.id)
                .collect();
            // terminal vertex in `work` -> cluster, for the active clusters
            let mut stand_in: BTreeMap<VertexId, ClusterId> = BTreeMap::new();
            let mut dummies: BTreeSet<VertexId> = BTreeSet::new();
            for &x in &active {
                let cl = &forest.clusters[x];
                if cl.vertices.len() == 1 {
                    let v = *cl.vertices.first().unwrap();
                    work.set_weight(v, cl.weight)?;
                    stand_in.insert(v, x);
                } else {
                    let mut it = cl.vertices.iter();
                    let (a, c) = (*it.next().unwrap(), *it.next().unwrap());
                    let d = work.add_vertex(cl.weight);
                    work.add_edge(d, a, 0)?;
                    work.add_edge(d, c, 0)?;
                    stand_in.insert(d, x);
                    dummies.insert(d);
                }
            }
            if checks && !is_two_connected(work) {
                return Err(Error::Internal("working graph lost 2-connectivity".into()));
            }

            while let Some(c) = find_good_cycle(work, alpha)? {
                let y = forest.clusters.len();
                let mut children: BTreeSet<ClusterId> = BTreeSet::new();
                for &e in &c.edges {
                    if let Some(&x) = owner.get(&e) {
                        children.insert(x);
                    }
                }
                for v in &c.vertices {
                    if let Some(&x) = stand_in.get(v) {
                        children.insert(x);
                    }
                }
                let mut vertices = BTreeSet::new();
                let mut edges = BTreeSet::new();
                let mut cycle_vertices = Vec::with_capacity(c.len());
                let mut cycle_edges = Vec::with_capacity(c.len());
                for &v in &c.vertices {
                    if dummies.contains(&v) {
                        cycle_vertices.push(CycleVertex::Dummy(stand_in[&v]));
                    } else {
                        cycle_vertices.push(CycleVertex::Host(v));
                        vertices.insert(v);
                    }
                }
                for &e in &c.edges {
                    let edge = work.edge(e);
                    if dummies.contains(&edge.u) || dummies.contains(&edge.v) {
                        cycle_edges.push(None);
                    } else {
                        cycle_edges.push(Some(e));
                        edges.insert(e);
                    }
                }
                let mut weight = 0;
                for &x in &children {
                    let cl = &mut forest.clusters[x];
                    cl.status = ClusterStatus::Merged;
                    cl.parent = Some(y);
                    weight += cl.weight;
                    vertices.extend(cl.vertices.iter().copied());
                    edges.extend(cl.edges.iter().copied());
                }
                for (&v, &x) in stand_in.iter() {
                    if children.contains(&x) {
                        if dummies.remove(&v) {
                            work.remove_vertex(v);
                        } else {
                            work.set_weight(v, 0)?;
                        }
                    }
                }
                stand_in.retain(|_, x| !children.contains(x));

                let status = if weight >= params.k { ClusterStatus::Large } else { ClusterStatus::Small };
                for &e in &edges {
                    match owner.get(&e) {
                        Some(x) if !children.contains(x) => forest.small_overlap = true,
                        _ => {}
                    }
                    if status == ClusterStatus::Small {
                        owner.insert(e, y);
                    } else {
                        owner.remove(&e);
                    }
                }
                let merge =
                    MergeCycle { vertices: cycle_vertices, edges: cycle_edges, cost: c.cost, active_weight: c.weight };
                let children: Vec<ClusterId> = children.into_iter().collect();
                forest.events.push(MergeEvent {
                    iteration: i,
                    cluster: y,
                    children: children.clone(),
                    cost: c.cost,
                    active_weight: c.weight,
                });
                forest.clusters.push(Cluster {
                    id: y,
                    vertices,
                    edges,
                    weight,
                    status,
                    formed_in: Some(i),
                    merge: Some(merge),
                    children,
                    parent: None,
                    block: b,
                });
                if checks && !is_two_connected(work) {
                    return Err(Error::Internal("working graph lost 2-connectivity".into()));
                }
            }

            forest.leftover[i] += stand_in.values().map(|&x| forest.clusters[x].weight).sum::<i64>();
            for (v, _) in stand_in {
                if dummies.contains(&v) {
                    work.remove_vertex(v);
                } else {
                    work.set_weight(v, 0)?;
                }
            }
        }
    }
    Ok(forest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn c4() -> Graph {
        let s = SCALE;
        build_graph(4, &[(0, 1, s), (1, 2, s), (2, 3, s), (3, 0, s)], &[(0, s), (1, s), (2, s), (3, s)], None).unwrap()
    }

    fn params(k: i64, rho: Ratio) -> PruneParams {
        PruneParams { k, rho, l_bound: 0, root: 0 }
    }

    #[test]
    fn four_cycle_merges_once() {
        let g = c4();
        let f = merge_clusters(&g, &params(2 * SCALE, Ratio::integer(1))).unwrap();
        assert_eq!(f.large(), vec![4]);
        let y = &f.clusters[4];
        assert_eq!(y.weight, 4 * SCALE);
        assert_eq!(g.cost_of(y.edges.iter()), 4 * SCALE);
        assert_eq!(y.children, vec![0, 1, 2, 3]);
    }

    #[test]
    fn good_cycle_threshold() {
        let g = c4();
        assert!(find_good_cycle(&g, Ratio::integer(2)).unwrap().is_some());
        assert!(find_good_cycle(&g, Ratio::new(1, 2)).unwrap().is_none());
    }
}
