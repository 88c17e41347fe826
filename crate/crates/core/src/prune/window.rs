use std::collections::BTreeSet;

use super::merge::{ClusterForest, ClusterId, CycleVertex};
use super::PruneParams;
use crate::error::{Error, Result};
use crate::graph::{min_cost_two_disjoint_paths, EdgeId, Graph, PathPair, VertexId};
use crate::numeric::Ratio;
use crate::solution::Solution;

/// A run of consecutive children of a large cluster around its merge cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub cluster: ClusterId,
    pub children: Vec<ClusterId>,
    pub edges: BTreeSet<EdgeId>,
    pub cost: i64,
    pub weight: i64,
}

#[derive(Clone, Debug)]
pub struct WindowSolution {
    pub solution: Solution,
    pub window: Window,
    /// The two terminals joined to the root.
    pub anchors: (VertexId, VertexId),
    /// Density of the large cluster the window was cut from.
    pub delta: Ratio,
}

/// Cuts a window of weight in `[k, 2k)` and cost at most `2 dens(Y) k` out of
/// the large cluster `y`, then joins a terminal of its first and of its last
/// child to the root by cheapest disjoint path pairs. Windows are tried in
/// order of cost; the first whose terminals reach weight `k` wins.
pub fn extract_window_solution(
    g: &Graph,
    forest: &ClusterForest,
    y: ClusterId,
    params: &PruneParams,
) -> Result<WindowSolution> {
    let r = params.root;
    let cluster = &forest.clusters[y];
    let delta = Ratio::new(g.cost_of(cluster.edges.iter()) as i128, cluster.weight as i128);
    let mut candidates = windows(g, forest, y, params.k)?;
    candidates.retain(|w| (w.cost as i128) * delta.denom() <= 2 * params.k as i128 * delta.numer());
    candidates.sort_by_key(|w| (w.cost, w.children.first().copied()));
    for w in candidates {
        let first = *w.children.first().unwrap();
        let last = *w.children.last().unwrap();
        let Some((v, pv)) = cheapest_anchor(g, forest, first, r) else {
            continue;
        };
        let Some((u, pu)) = cheapest_anchor(g, forest, last, r) else {
            continue;
        };
        let mut edges = w.edges.clone();
        edges.extend(pv.all_edges());
        edges.extend(pu.all_edges());
        let edges: Vec<EdgeId> = edges.into_iter().collect();
        let solution = Solution::rooted(g, &edges, r)?;
        if solution.covered_weight() >= params.k {
            return Ok(WindowSolution { solution, window: w, anchors: (v, u), delta });
        }
    }
    Err(Error::WindowNotFound)
}

fn cheapest_anchor(g: &Graph, forest: &ClusterForest, x: ClusterId, r: VertexId) -> Option<(VertexId, PathPair)> {
    forest
        .leaves(x)
        .into_iter()
        .filter(|&t| t != r)
        .filter_map(|t| min_cost_two_disjoint_paths(g, t, r).ok().map(|p| (t, p)))
        .min_by_key(|(t, p)| (p.cost, *t))
}

/// All minimal windows of weight at least `k`, one per starting child. A
/// cluster without a merge cycle is its own single window.
pub fn windows(g: &Graph, forest: &ClusterForest, y: ClusterId, k: i64) -> Result<Vec<Window>> {
    let cluster = &forest.clusters[y];
    let Some(cycle) = &cluster.merge else {
        return Ok(vec![Window {
            cluster: y,
            children: vec![y],
            edges: BTreeSet::new(),
            cost: 0,
            weight: cluster.weight,
        }]);
    };
    let len = cycle.len();
    // touch positions of each child along the cycle
    let mut touches: Vec<(ClusterId, Vec<usize>)> = Vec::new();
    for &x in &cluster.children {
        let cl = &forest.clusters[x];
        let mut pos = Vec::new();
        for p in 0..len {
            let on_vertex = match cycle.vertices[p] {
                CycleVertex::Host(v) => cl.vertices.contains(&v),
                CycleVertex::Dummy(d) => d == x,
            };
            let on_edge = cycle.edges[p].is_some_and(|e| cl.edges.contains(&e));
            if on_vertex || on_edge {
                pos.push(p);
            }
        }
        if pos.is_empty() {
            return Err(Error::Internal(format!("cluster {x} does not meet the cycle of {y}")));
        }
        touches.push((x, pos));
    }
    touches.sort_by_key(|(x, pos)| (pos[0], *x));
    let q = touches.len();

    let mut out = Vec::new();
    for a in 0..q {
        let start = touches[a].1[0];
        let mut weight = 0;
        let mut b = a;
        let mut taken = 0;
        while taken < q {
            weight += forest.clusters[touches[b % q].0].weight;
            taken += 1;
            if weight >= k {
                break;
            }
            b += 1;
        }
        if weight < k {
            continue;
        }
        let stop = if taken == q { start + len } else { start + (touches[(b + 1) % q].1[0] + len - start) % len };
        let unwrap = |p: usize| start + (p + len - start) % len;
        let mut children = Vec::with_capacity(taken);
        let mut reach = start;
        let mut edges = BTreeSet::new();
        for j in a..a + taken {
            let (x, pos) = &touches[j % q];
            children.push(*x);
            edges.extend(forest.clusters[*x].edges.iter().copied());
            for &p in pos {
                let u = unwrap(p);
                if u < stop {
                    reach = reach.max(u);
                }
            }
        }
        for p in start..reach {
            if let Some(e) = cycle.edges[p % len] {
                edges.insert(e);
            }
        }
        out.push(Window { cluster: y, cost: g.cost_of(edges.iter()), children, edges, weight });
    }
    Ok(out)
}
