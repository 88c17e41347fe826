use std::collections::BTreeSet;

use super::{Cycle, EdgeId, Graph, VertexId};
use crate::error::{Error, Result};

/// Result of shrinking a cycle to a single hub vertex.
#[derive(Clone, Debug)]
pub struct Contraction {
    /// Multigraph with vertices renumbered: non-cycle vertices first in id
    /// order, then the hub.
    pub graph: Graph,
    /// Host vertex to contracted vertex; cycle vertices map to the hub.
    pub vertex_map: Vec<Option<VertexId>>,
    /// Contracted vertex to host vertex; `None` for the hub.
    pub inverse: Vec<Option<VertexId>>,
    /// Contracted edge id to host edge id.
    pub edge_origin: Vec<EdgeId>,
    pub hub: VertexId,
}

/// Contracts `c` to one vertex of weight zero. Edges with both ends on the
/// cycle disappear; edges with one end on it are redirected to the hub, so
/// parallel edges may appear.
pub fn contract_cycle(g: &Graph, c: &Cycle) -> Result<Contraction> {
    Cycle::new(g, c.vertices.clone(), c.edges.clone())?;
    let on_cycle: BTreeSet<VertexId> = c.vertices.iter().copied().collect();
    let mut vertex_map = vec![None; g.vertex_bound()];
    let mut inverse = Vec::new();
    for v in g.vertices().filter(|v| !on_cycle.contains(v)) {
        vertex_map[v] = Some(inverse.len());
        inverse.push(Some(v));
    }
    let hub = inverse.len();
    inverse.push(None);
    let mut graph = Graph::new_multigraph(inverse.len());
    for (new, old) in inverse.iter().enumerate() {
        if let Some(old) = old {
            graph.set_weight(new, g.weight(*old))?;
        }
    }
    for &v in &on_cycle {
        vertex_map[v] = Some(hub);
    }
    let mut edge_origin = Vec::new();
    for (e, edge) in g.edges() {
        let (a, b) = (vertex_map[edge.u], vertex_map[edge.v]);
        let (Some(a), Some(b)) = (a, b) else {
            return Err(Error::Internal("alive edge with dead endpoint".into()));
        };
        if a == hub && b == hub {
            continue;
        }
        graph.add_edge(a, b, edge.cost)?;
        edge_origin.push(e);
    }
    Ok(Contraction { graph, vertex_map, inverse, edge_origin, hub })
}

/// For each connected component `H` of `g - v`, the subgraph spanned by the
/// edges with both endpoints in `H + v`. Ids are those of `g`.
pub fn components_after_contraction(g: &Graph, v: VertexId) -> Vec<Graph> {
    let mut comp = vec![usize::MAX; g.vertex_bound()];
    let mut count = 0;
    for s in g.vertices() {
        if s == v || comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &(y, _) in g.neighbors(x) {
                if y != v && comp[y] == usize::MAX {
                    comp[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    let mut edge_sets: Vec<Vec<EdgeId>> = vec![Vec::new(); count];
    for (e, edge) in g.edges() {
        let side = if edge.u == v { edge.v } else { edge.u };
        if side != v {
            edge_sets[comp[side]].push(e);
        }
    }
    edge_sets.iter().map(|es| g.restrict_to_edges(es.iter())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, is_two_connected};

    #[test]
    fn contracting_a_triangle_of_a_wheel() {
        // Wheel: hub 0 with rim 1-2-3-4.
        let g = build_graph(
            5,
            &[(1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 1, 1), (0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)],
            &[(0, 1), (2, 1)],
            None,
        )
        .unwrap();
        let c = Cycle::from_edge_set(&g, &[0, 4, 5]).unwrap();
        let con = contract_cycle(&g, &c).unwrap();
        assert_eq!(con.graph.num_vertices(), 3);
        assert_eq!(con.hub, 2);
        assert_eq!(con.vertex_map[3], Some(0));
        assert_eq!(con.vertex_map[4], Some(1));
        assert_eq!(con.vertex_map[2], Some(2));
        assert_eq!(con.graph.num_edges(), 5);
        let comps = components_after_contraction(&con.graph, con.hub);
        assert_eq!(comps.len(), 1);
        assert!(is_two_connected(&comps[0]));
        for (new, &old) in con.edge_origin.iter().enumerate() {
            assert_eq!(con.graph.edge(new).cost, g.edge(old).cost);
        }
    }
}
