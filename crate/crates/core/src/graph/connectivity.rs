use std::collections::{BTreeMap, BTreeSet};

use super::{EdgeId, Graph, PathPair, VertexId};
use crate::error::{Error, Result};
use crate::flow::MinCostFlow;

/// A maximal 2-vertex-connected piece of a graph; bridges form two-vertex
/// blocks with a single edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// Biconnected components by an iterative Tarjan edge-stack walk.
/// Isolated vertices belong to no block.
pub fn block_decomposition(g: &Graph) -> Vec<Block> {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_bound();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut blocks = Vec::new();
    for s in g.vertices() {
        if disc[s] != UNSEEN {
            continue;
        }
        disc[s] = timer;
        low[s] = timer;
        timer += 1;
        // (vertex, edge to parent, next neighbor index)
        let mut frames: Vec<(VertexId, EdgeId, usize)> = vec![(s, UNSEEN, 0)];
        while let Some(frame) = frames.last_mut() {
            let (v, parent_edge, idx) = *frame;
            if idx < g.neighbors(v).len() {
                frame.2 += 1;
                let (w, e) = g.neighbors(v)[idx];
                if e == parent_edge {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut edges = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            edges.push(e);
                            if e == parent_edge {
                                break;
                            }
                        }
                        let vertices: BTreeSet<VertexId> =
                            edges.iter().flat_map(|&e| [g.edge(e).u, g.edge(e).v]).collect();
                        edges.sort_unstable();
                        blocks.push(Block { vertices: vertices.into_iter().collect(), edges });
                    }
                }
            }
        }
    }
    blocks
}

/// Vertices lying in two or more blocks.
pub fn cut_vertices(g: &Graph) -> Vec<VertexId> {
    let mut count: BTreeMap<VertexId, usize> = BTreeMap::new();
    for b in block_decomposition(g) {
        for v in b.vertices {
            *count.entry(v).or_default() += 1;
        }
    }
    count.into_iter().filter(|&(_, c)| c >= 2).map(|(v, _)| v).collect()
}

/// Blocks that contain every vertex in `vs`.
pub fn blocks_containing(g: &Graph, vs: &[VertexId]) -> Vec<Block> {
    block_decomposition(g).into_iter().filter(|b| vs.iter().all(|v| b.vertices.binary_search(v).is_ok())).collect()
}

pub fn is_connected(g: &Graph) -> bool {
    let Some(s) = g.vertices().next() else {
        return true;
    };
    let mut seen = vec![false; g.vertex_bound()];
    seen[s] = true;
    let mut stack = vec![s];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &(w, _) in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == g.num_vertices()
}

/// True iff the graph has at least three vertices, is connected and has no
/// cut vertex. A two-vertex multigraph with at least two parallel edges also
/// counts as 2-vertex-connected.
pub fn is_two_connected(g: &Graph) -> bool {
    let n = g.num_vertices();
    if n < 2 {
        return false;
    }
    let blocks = block_decomposition(g);
    if blocks.len() != 1 || blocks[0].vertices.len() != n {
        return false;
    }
    n >= 3 || (g.is_multigraph() && blocks[0].edges.len() >= 2)
}

/// [`is_two_connected`] on the subgraph formed by `edges`.
pub fn is_two_connected_edges(g: &Graph, edges: &[EdgeId]) -> bool {
    is_two_connected(&g.restrict_to_edges(edges.iter()))
}

/// Whether `t` and `r` are joined by two internally vertex-disjoint paths.
pub fn two_connected_to_root(g: &Graph, t: VertexId, r: VertexId) -> Result<bool> {
    if t == r {
        return Err(Error::SameVertex);
    }
    if !g.contains_vertex(t) || !g.contains_vertex(r) {
        return Ok(false);
    }
    Ok(disjoint_paths(g, t, &[r], 2, &|_| true).is_some())
}

/// Minimum total cost pair of internally vertex-disjoint `s`-`t` paths.
pub fn min_cost_two_disjoint_paths(g: &Graph, s: VertexId, t: VertexId) -> Result<PathPair> {
    if s == t {
        return Err(Error::SameVertex);
    }
    if !g.contains_vertex(s) || !g.contains_vertex(t) {
        return Err(Error::NoTwoDisjointPaths);
    }
    disjoint_paths(g, s, &[t], 2, &|_| true).ok_or(Error::NoTwoDisjointPaths)
}

/// Minimum-cost pair of paths from `s`, internally vertex-disjoint, each
/// ending at a vertex of `targets` and touching no other target. Each target
/// absorbs at most `target_cap` paths. Interior vertices must satisfy
/// `allowed`. Used both for Menger checks (one target, capacity two) and for
/// fans onto a vertex set (capacity one).
pub(crate) fn disjoint_paths(
    g: &Graph,
    s: VertexId,
    targets: &[VertexId],
    target_cap: i64,
    allowed: &dyn Fn(VertexId) -> bool,
) -> Option<PathPair> {
    let n = g.vertex_bound();
    let is_target: BTreeSet<VertexId> = targets.iter().copied().collect();
    let mut net = MinCostFlow::new(2 * n + 1);
    let sink = 2 * n;
    let vin = |v: VertexId| 2 * v;
    let vout = |v: VertexId| 2 * v + 1;
    for v in g.vertices() {
        if v == s {
            net.add_arc(vin(v), vout(v), 2, 0);
        } else if is_target.contains(&v) {
            net.add_arc(vin(v), sink, target_cap, 0);
        } else if allowed(v) {
            net.add_arc(vin(v), vout(v), 1, 0);
        }
    }
    let mut edge_arcs = Vec::new();
    for (e, edge) in g.edges() {
        let fwd = net.add_arc(vout(edge.u), vin(edge.v), 1, edge.cost);
        let bwd = net.add_arc(vout(edge.v), vin(edge.u), 1, edge.cost);
        edge_arcs.push((e, fwd, bwd));
    }
    let (flow, _) = net.run(vin(s), sink, 2);
    if flow < 2 {
        return None;
    }
    let mut out: BTreeMap<VertexId, Vec<(VertexId, EdgeId)>> = BTreeMap::new();
    for (e, fwd, bwd) in edge_arcs {
        let edge = g.edge(e);
        match net.flow_on(fwd) - net.flow_on(bwd) {
            1 => out.entry(edge.u).or_default().push((edge.v, e)),
            -1 => out.entry(edge.v).or_default().push((edge.u, e)),
            _ => {}
        }
    }
    let mut paths: [Vec<VertexId>; 2] = [vec![s], vec![s]];
    let mut edges: [Vec<EdgeId>; 2] = [Vec::new(), Vec::new()];
    for i in 0..2 {
        let mut cur = s;
        loop {
            let list = out.get_mut(&cur)?;
            let (next, e) = list.pop()?;
            paths[i].push(next);
            edges[i].push(e);
            if is_target.contains(&next) {
                break;
            }
            cur = next;
            if paths[i].len() > n + 1 {
                return None;
            }
        }
    }
    let cost = edges.iter().flatten().map(|&e| g.edge(e).cost).sum();
    Some(PathPair { paths, edges, cost })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn bowtie() -> Graph {
        build_graph(5, &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (0, 3, 3), (3, 4, 3), (4, 0, 3)], &[(1, 1), (3, 1)], None)
            .unwrap()
    }

    #[test]
    fn bowtie_has_two_blocks() {
        let g = bowtie();
        assert_eq!(block_decomposition(&g).len(), 2);
        assert_eq!(cut_vertices(&g), vec![0]);
        assert!(!is_two_connected(&g));
        assert!(!two_connected_to_root(&g, 1, 3).unwrap());
        assert!(two_connected_to_root(&g, 1, 2).unwrap());
    }

    #[test]
    fn small_cases() {
        let edge = build_graph(2, &[(0, 1, 1)], &[], None).unwrap();
        assert!(!is_two_connected(&edge));
        let mut pair = Graph::new_multigraph(2);
        pair.add_edge(0, 1, 1).unwrap();
        pair.add_edge(0, 1, 1).unwrap();
        assert!(is_two_connected(&pair));
        let tri = build_graph(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)], &[], None).unwrap();
        assert!(is_two_connected(&tri));
        assert_eq!(two_connected_to_root(&tri, 0, 0), Err(Error::SameVertex));
    }

    #[test]
    fn cheapest_disjoint_pair() {
        // Square 0-1-2-3 with a diagonal 0-2 and an expensive detour.
        let g = build_graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 5), (3, 0, 5), (0, 2, 1)], &[], None).unwrap();
        let p = min_cost_two_disjoint_paths(&g, 0, 2).unwrap();
        assert_eq!(p.cost, 3);
        assert!(p.is_valid_in(&g, 0, 2));
        let path = build_graph(3, &[(0, 1, 1), (1, 2, 1)], &[], None).unwrap();
        assert_eq!(min_cost_two_disjoint_paths(&path, 0, 2), Err(Error::NoTwoDisjointPaths));
    }
}
