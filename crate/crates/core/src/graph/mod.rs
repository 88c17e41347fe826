//! Undirected weighted graphs with stable vertex and edge ids.
//!
//! Deleting a vertex or an edge leaves a tombstone, so ids handed out by
//! [`Graph::add_vertex`] and [`Graph::add_edge`] stay valid for the lifetime of
//! the graph and across [`Graph::restrict_to_edges`].

mod connectivity;
mod contract;

pub(crate) use connectivity::disjoint_paths;
pub use connectivity::{
    block_decomposition, blocks_containing, cut_vertices, is_connected, is_two_connected, is_two_connected_edges,
    min_cost_two_disjoint_paths, two_connected_to_root, Block,
};
pub use contract::{components_after_contraction, contract_cycle, Contraction};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::numeric::Ratio;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub cost: i64,
}

impl Edge {
    /// The endpoint opposite to `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

#[derive(Clone, Debug, Default)]
pub struct Graph {
    weights: Vec<i64>,
    vertex_alive: Vec<bool>,
    edges: Vec<Edge>,
    edge_alive: Vec<bool>,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    root: Option<VertexId>,
    multigraph: bool,
}

impl Graph {
    /// A simple graph with `n` isolated zero-weight vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            weights: vec![0; n],
            vertex_alive: vec![true; n],
            edges: Vec::new(),
            edge_alive: Vec::new(),
            adj: vec![Vec::new(); n],
            root: None,
            multigraph: false,
        }
    }

    /// Like [`Graph::new`] but parallel edges are allowed, and a pair of
    /// parallel edges counts as 2-vertex-connected.
    pub fn new_multigraph(n: usize) -> Self {
        let mut g = Graph::new(n);
        g.multigraph = true;
        g
    }

    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    pub fn set_multigraph(&mut self, multigraph: bool) {
        self.multigraph = multigraph;
    }

    pub fn add_vertex(&mut self, weight: i64) -> VertexId {
        self.weights.push(weight.max(0));
        self.vertex_alive.push(true);
        self.adj.push(Vec::new());
        self.weights.len() - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, cost: i64) -> Result<EdgeId> {
        if !self.contains_vertex(u) || !self.contains_vertex(v) {
            return Err(Error::InvalidGraph(format!("edge ({u}, {v}) has a missing endpoint")));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        if cost < 0 {
            return Err(Error::InvalidGraph(format!("edge ({u}, {v}) has negative cost")));
        }
        if !self.multigraph && self.adj[u].iter().any(|&(w, _)| w == v) {
            return Err(Error::InvalidGraph(format!("parallel edge ({u}, {v}) in a simple graph")));
        }
        let id = self.edges.len();
        self.edges.push(Edge { u, v, cost });
        self.edge_alive.push(true);
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        Ok(id)
    }

    pub fn remove_edge(&mut self, e: EdgeId) {
        if !self.is_edge_alive(e) {
            return;
        }
        self.edge_alive[e] = false;
        let Edge { u, v, .. } = self.edges[e];
        self.adj[u].retain(|&(_, id)| id != e);
        self.adj[v].retain(|&(_, id)| id != e);
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        if !self.contains_vertex(v) {
            return;
        }
        let incident: Vec<EdgeId> = self.adj[v].iter().map(|&(_, e)| e).collect();
        for e in incident {
            self.remove_edge(e);
        }
        self.vertex_alive[v] = false;
        if self.root == Some(v) {
            self.root = None;
        }
    }

    pub fn set_weight(&mut self, v: VertexId, weight: i64) -> Result<()> {
        if !self.contains_vertex(v) {
            return Err(Error::InvalidGraph(format!("vertex {v} does not exist")));
        }
        if weight < 0 {
            return Err(Error::InvalidGraph(format!("vertex {v} has negative weight")));
        }
        self.weights[v] = weight;
        Ok(())
    }

    pub fn set_root(&mut self, root: Option<VertexId>) {
        self.root = root;
    }

    pub fn root(&self) -> Option<VertexId> {
        self.root
    }

    /// One past the largest vertex id ever issued.
    pub fn vertex_bound(&self) -> usize {
        self.weights.len()
    }

    /// One past the largest edge id ever issued.
    pub fn edge_bound(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v < self.vertex_alive.len() && self.vertex_alive[v]
    }

    pub fn is_edge_alive(&self, e: EdgeId) -> bool {
        e < self.edge_alive.len() && self.edge_alive[e]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.weights.len()).filter(move |&v| self.vertex_alive[v])
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_alive.iter().filter(|&&a| a).count()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, Edge)> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edge_alive[e]).map(move |e| (e, self.edges[e]))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edge_alive[e])
    }

    pub fn num_edges(&self) -> usize {
        self.edge_alive.iter().filter(|&&a| a).count()
    }

    /// The edge record for `e`, alive or not.
    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    /// `(neighbor, edge id)` pairs over alive incident edges.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn weight(&self, v: VertexId) -> i64 {
        self.weights[v]
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.contains_vertex(v) && self.weights[v] > 0
    }

    /// Alive vertices with positive weight, in id order.
    pub fn terminals(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.weights[v] > 0).collect()
    }

    pub fn terminal_count(&self) -> usize {
        self.vertices().filter(|&v| self.weights[v] > 0).count()
    }

    /// Sum of weights over alive vertices.
    pub fn total_weight(&self) -> i64 {
        self.vertices().map(|v| self.weights[v]).sum()
    }

    /// Sum of costs over alive edges.
    pub fn total_cost(&self) -> i64 {
        self.edges().map(|(_, e)| e.cost).sum()
    }

    pub fn cost_of<'a>(&self, edges: impl IntoIterator<Item = &'a EdgeId>) -> i64 {
        edges.into_iter().map(|&e| self.edges[e].cost).sum()
    }

    pub fn min_positive_weight(&self) -> Option<i64> {
        self.vertices().map(|v| self.weights[v]).filter(|&w| w > 0).min()
    }

    /// Ids of parallel alive edges between `u` and `v`.
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        self.adj[u].iter().filter(|&&(w, _)| w == v).map(|&(_, e)| e).collect()
    }

    /// The subgraph on exactly the given edges; a vertex survives iff one of
    /// the kept edges touches it. Ids, weights and the root are preserved.
    pub fn restrict_to_edges<'a>(&self, edges: impl IntoIterator<Item = &'a EdgeId>) -> Graph {
        let keep: BTreeSet<EdgeId> = edges.into_iter().copied().filter(|&e| self.is_edge_alive(e)).collect();
        let mut vertex_alive = vec![false; self.weights.len()];
        let mut edge_alive = vec![false; self.edges.len()];
        let mut adj = vec![Vec::new(); self.weights.len()];
        for &e in &keep {
            let Edge { u, v, .. } = self.edges[e];
            edge_alive[e] = true;
            vertex_alive[u] = true;
            vertex_alive[v] = true;
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        Graph {
            weights: self.weights.clone(),
            vertex_alive,
            edges: self.edges.clone(),
            edge_alive,
            adj,
            root: self.root,
            multigraph: self.multigraph,
        }
    }

    /// The induced subgraph on the given vertices, with ids preserved.
    pub fn restrict_to_vertices(&self, vertices: &BTreeSet<VertexId>) -> Graph {
        let mut g = self.clone();
        for v in self.vertices() {
            if !vertices.contains(&v) {
                g.remove_vertex(v);
            }
        }
        g.root = self.root;
        g
    }

    /// Density `cost(E) / w(V)` of the whole graph.
    pub fn density(&self) -> Result<Ratio> {
        Ratio::checked(self.total_cost() as i128, self.total_weight() as i128).ok_or(Error::ZeroWeight)
    }

    /// Density counting only the weights of `active` vertices.
    pub fn density_of(&self, active: &[VertexId]) -> Result<Ratio> {
        let weight: i64 = active.iter().filter(|&&v| self.contains_vertex(v)).map(|&v| self.weights[v]).sum();
        Ratio::checked(self.total_cost() as i128, weight as i128).ok_or(Error::ZeroWeight)
    }
}

/// Builds a simple graph from 0-based edge triples `(u, v, cost)` and vertex
/// weights. Unlisted vertices get weight zero.
pub fn build_graph(
    n: usize,
    edges: &[(VertexId, VertexId, i64)],
    weights: &[(VertexId, i64)],
    root: Option<VertexId>,
) -> Result<Graph> {
    let mut g = Graph::new(n);
    for &(v, w) in weights {
        if v >= n {
            return Err(Error::InvalidGraph(format!("weight given for unknown vertex {v}")));
        }
        g.set_weight(v, w)?;
    }
    for &(u, v, c) in edges {
        g.add_edge(u, v, c)?;
    }
    if let Some(r) = root {
        if r >= n {
            return Err(Error::InvalidGraph(format!("root {r} is not a vertex")));
        }
    }
    g.set_root(root);
    Ok(g)
}

/// Two internally vertex-disjoint paths between the same endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPair {
    /// Vertex sequences, both starting at the source and ending at the target.
    pub paths: [Vec<VertexId>; 2],
    pub edges: [Vec<EdgeId>; 2],
    pub cost: i64,
}

impl PathPair {
    pub fn all_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges[0].iter().chain(self.edges[1].iter()).copied()
    }

    /// Checks endpoints, adjacency, and internal disjointness against `g`.
    pub fn is_valid_in(&self, g: &Graph, s: VertexId, t: VertexId) -> bool {
        let mut interior = BTreeSet::new();
        for i in 0..2 {
            let p = &self.paths[i];
            let es = &self.edges[i];
            if p.first() != Some(&s) || p.last() != Some(&t) || es.len() + 1 != p.len() {
                return false;
            }
            for (j, &e) in es.iter().enumerate() {
                if !g.is_edge_alive(e) {
                    return false;
                }
                let edge = g.edge(e);
                if !(edge.touches(p[j]) && edge.other(p[j]) == p[j + 1]) {
                    return false;
                }
            }
            for &v in &p[1..p.len() - 1] {
                if v == s || v == t || !interior.insert(v) {
                    return false;
                }
            }
        }
        if self.edges[0] == self.edges[1] {
            return false;
        }
        self.cost == g.cost_of(self.all_edges().collect::<Vec<_>>().iter())
    }
}

/// A simple cycle given by its cyclic vertex order; `edges[i]` joins
/// `vertices[i]` and `vertices[(i + 1) % len]`. A cycle of length two is a
/// pair of parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub cost: i64,
    pub weight: i64,
}

impl Cycle {
    pub fn new(g: &Graph, vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Result<Cycle> {
        let k = vertices.len();
        if k < 2 || edges.len() != k {
            return Err(Error::NotACycle);
        }
        if k == 2 && edges[0] == edges[1] {
            return Err(Error::NotACycle);
        }
        let distinct: BTreeSet<VertexId> = vertices.iter().copied().collect();
        if distinct.len() != k || vertices.iter().any(|&v| !g.contains_vertex(v)) {
            return Err(Error::NotACycle);
        }
        for i in 0..k {
            let e = edges[i];
            if !g.is_edge_alive(e) {
                return Err(Error::NotACycle);
            }
            let edge = g.edge(e);
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            if !(edge.touches(a) && edge.other(a) == b) {
                return Err(Error::NotACycle);
            }
        }
        let cost = g.cost_of(edges.iter());
        let weight = vertices.iter().map(|&v| g.weight(v)).sum();
        Ok(Cycle { vertices, edges, cost, weight })
    }

    /// Orders an unordered edge set that forms a simple cycle.
    pub fn from_edge_set(g: &Graph, edge_set: &[EdgeId]) -> Result<Cycle> {
        if edge_set.len() < 2 {
            return Err(Error::NotACycle);
        }
        let sub = g.restrict_to_edges(edge_set.iter());
        if sub.num_edges() != edge_set.len() || sub.vertices().any(|v| sub.degree(v) != 2) {
            return Err(Error::NotACycle);
        }
        let start = sub.vertices().next().ok_or(Error::NotACycle)?;
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        let mut prev_edge = usize::MAX;
        let mut cur = start;
        loop {
            let &(next, e) = sub.neighbors(cur).iter().find(|&&(_, e)| e != prev_edge).ok_or(Error::NotACycle)?;
            edges.push(e);
            if next == start {
                break;
            }
            vertices.push(next);
            prev_edge = e;
            cur = next;
            if vertices.len() > edge_set.len() {
                return Err(Error::NotACycle);
            }
        }
        if edges.len() != edge_set.len() {
            return Err(Error::NotACycle);
        }
        Cycle::new(g, vertices, edges)
    }

    /// Joins the two paths of a pair into one cycle.
    pub fn from_path_pair(g: &Graph, pair: &PathPair) -> Result<Cycle> {
        let mut vertices = pair.paths[0].clone();
        let mut edges = pair.edges[0].clone();
        let back = &pair.paths[1];
        vertices.extend(back[1..back.len() - 1].iter().rev());
        edges.extend(pair.edges[1].iter().rev());
        Cycle::new(g, vertices, edges)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn terminals(&self, g: &Graph) -> Vec<VertexId> {
        self.vertices.iter().copied().filter(|&v| g.weight(v) > 0).collect()
    }

    pub fn terminal_count(&self, g: &Graph) -> usize {
        self.vertices.iter().filter(|&&v| g.weight(v) > 0).count()
    }

    /// At least two terminals.
    pub fn is_nontrivial(&self, g: &Graph) -> bool {
        self.terminal_count(g) >= 2
    }

    pub fn density(&self) -> Result<Ratio> {
        Ratio::checked(self.cost as i128, self.weight as i128).ok_or(Error::ZeroWeight)
    }

    /// Rotates so the cycle starts at `v`, keeping the direction.
    pub fn rotated_to(&self, v: VertexId) -> Option<Cycle> {
        let p = self.position(v)?;
        let mut c = self.clone();
        c.vertices.rotate_left(p);
        c.edges.rotate_left(p);
        Some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        build_graph(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)], &[(0, 1), (1, 1)], None).unwrap()
    }

    #[test]
    fn stable_ids_survive_deletion() {
        let mut g = triangle();
        let x = g.add_vertex(5);
        let e = g.add_edge(x, 0, 2).unwrap();
        g.remove_edge(1);
        assert_eq!(g.edge(e), Edge { u: 3, v: 0, cost: 2 });
        assert!(!g.is_edge_alive(1));
        assert_eq!(g.num_edges(), 3);
        g.remove_vertex(x);
        assert!(!g.is_edge_alive(e));
        assert_eq!(g.edge_ids().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn simple_graph_rejects_parallel_edges() {
        let mut g = triangle();
        assert!(g.add_edge(1, 0, 3).is_err());
        assert!(g.add_edge(1, 1, 3).is_err());
        let mut m = Graph::new_multigraph(2);
        m.add_edge(0, 1, 1).unwrap();
        m.add_edge(1, 0, 1).unwrap();
        assert_eq!(m.edges_between(0, 1).len(), 2);
    }

    #[test]
    fn density_requires_weight() {
        let g = triangle();
        assert_eq!(g.density().unwrap(), Ratio::new(3, 2));
        let h = build_graph(3, &[(0, 1, 1)], &[], None).unwrap();
        assert_eq!(h.density(), Err(Error::ZeroWeight));
    }

    #[test]
    fn restriction_keeps_ids() {
        let g = triangle();
        let h = g.restrict_to_edges(&[0]);
        assert_eq!(h.vertices().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(h.edge(0), g.edge(0));
        assert_eq!(h.num_edges(), 1);
    }

    #[test]
    fn cycle_validation() {
        let g = triangle();
        let c = Cycle::from_edge_set(&g, &[2, 0, 1]).unwrap();
        assert_eq!(c.cost, 3);
        assert_eq!(c.weight, 2);
        assert!(c.is_nontrivial(&g));
        assert!(Cycle::new(&g, vec![0, 1, 2], vec![0, 2, 1]).is_err());
        assert!(Cycle::from_edge_set(&g, &[0, 1]).is_err());
    }
}
