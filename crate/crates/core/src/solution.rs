//! Solutions together with connectivity certificates.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{is_two_connected, min_cost_two_disjoint_paths, EdgeId, Graph, PathPair, VertexId};

/// Evidence that each covered terminal is 2-connected where claimed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// For every covered terminal, two internally disjoint paths to the root
    /// using solution edges only.
    Rooted { root: VertexId, pairs: Vec<(VertexId, PathPair)> },
    /// The solution is 2-connected; every other covered terminal has two
    /// disjoint paths to `anchor` inside the solution.
    Unrooted { anchor: VertexId, pairs: Vec<(VertexId, PathPair)> },
}

impl Certificate {
    pub fn pairs(&self) -> &[(VertexId, PathPair)] {
        match self {
            Certificate::Rooted { pairs, .. } | Certificate::Unrooted { pairs, .. } => pairs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Sorted, deduplicated edge ids of the host graph.
    pub edges: Vec<EdgeId>,
    pub cost: i64,
    /// Covered terminals with their weights, in id order.
    pub covered: Vec<(VertexId, i64)>,
    pub certificate: Certificate,
}

impl Solution {
    /// Collects the terminals of `g` that have two disjoint paths to `root`
    /// within `edges`. The root itself never counts as covered.
    pub fn rooted(g: &Graph, edges: &[EdgeId], root: VertexId) -> Result<Solution> {
        let edges = normalize(g, edges)?;
        let sub = g.restrict_to_edges(edges.iter());
        let mut covered = Vec::new();
        let mut pairs = Vec::new();
        if sub.contains_vertex(root) {
            for t in sub.terminals() {
                if t == root {
                    continue;
                }
                if let Ok(pair) = min_cost_two_disjoint_paths(&sub, t, root) {
                    covered.push((t, g.weight(t)));
                    pairs.push((t, pair));
                }
            }
        }
        Ok(Solution { cost: g.cost_of(edges.iter()), edges, covered, certificate: Certificate::Rooted { root, pairs } })
    }

    /// A 2-connected edge set; every terminal it touches is covered.
    pub fn unrooted(g: &Graph, edges: &[EdgeId]) -> Result<Solution> {
        let edges = normalize(g, edges)?;
        let sub = g.restrict_to_edges(edges.iter());
        if !is_two_connected(&sub) {
            return Err(Error::NotTwoConnected);
        }
        let anchor = sub.vertices().next().ok_or(Error::NotTwoConnected)?;
        let mut covered = Vec::new();
        let mut pairs = Vec::new();
        for t in sub.terminals() {
            covered.push((t, g.weight(t)));
            if t != anchor {
                pairs.push((t, min_cost_two_disjoint_paths(&sub, t, anchor)?));
            }
        }
        Ok(Solution {
            cost: g.cost_of(edges.iter()),
            edges,
            covered,
            certificate: Certificate::Unrooted { anchor, pairs },
        })
    }

    pub fn covered_weight(&self) -> i64 {
        self.covered.iter().map(|&(_, w)| w).sum()
    }

    pub fn covered_set(&self) -> BTreeSet<VertexId> {
        self.covered.iter().map(|&(v, _)| v).collect()
    }
}

fn normalize(g: &Graph, edges: &[EdgeId]) -> Result<Vec<EdgeId>> {
    let set: BTreeSet<EdgeId> = edges.iter().copied().collect();
    if let Some(&e) = set.iter().find(|&&e| !g.is_edge_alive(e)) {
        return Err(Error::InvalidGraph(format!("solution uses missing edge {e}")));
    }
    Ok(set.into_iter().collect())
}
