use crate::flow::MaxFlow;
use crate::graph::{EdgeId, Graph, VertexId};

const CUT_TOL: f64 = 1e-7;

/// `x(delta(S) \ delta(v)) >= requirement` for a vertex set `S` that holds
/// `terminal` but not the root.
#[derive(Clone, Debug, PartialEq)]
pub struct CutConstraint {
    pub terminal: VertexId,
    pub side: Vec<VertexId>,
    pub excluded: Option<VertexId>,
    /// 2 for plain cuts, 1 for cuts with an excluded vertex.
    pub requirement: u8,
    /// Edges crossing the cut (not touching the excluded vertex).
    pub edges: Vec<EdgeId>,
    /// Current value of the left-hand side.
    pub value: f64,
}

impl CutConstraint {
    pub fn violation(&self) -> f64 {
        self.requirement as f64 - self.value
    }
}

fn min_cut(
    g: &Graph,
    x: &[f64],
    t: VertexId,
    r: VertexId,
    skip: Option<VertexId>,
) -> (f64, Vec<VertexId>, Vec<EdgeId>) {
    let mut net = MaxFlow::new(g.vertex_bound());
    for (e, edge) in g.edges() {
        if skip.is_some_and(|v| edge.touches(v)) {
            continue;
        }
        let cap = x.get(e).copied().unwrap_or(0.0).max(0.0);
        if cap > 0.0 {
            net.add_undirected(edge.u, edge.v, cap);
        }
    }
    let value = net.run(t, r);
    let reach = net.source_side(t);
    let side: Vec<VertexId> = g.vertices().filter(|&v| reach[v] && Some(v) != skip).collect();
    let edges: Vec<EdgeId> = g
        .edges()
        .filter(|(_, edge)| !skip.is_some_and(|v| edge.touches(v)) && reach[edge.u] != reach[edge.v])
        .map(|(e, _)| e)
        .collect();
    (value, side, edges)
}

fn cuts_for_terminal(g: &Graph, x: &[f64], t: VertexId, r: VertexId) -> Vec<CutConstraint> {
    let mut out = Vec::new();
    for v in g.vertices() {
        if v == t || v == r {
            continue;
        }
        let (value, side, edges) = min_cut(g, x, t, r, Some(v));
        if value < 1.0 - CUT_TOL {
            let value = edges.iter().map(|&e| x[e]).sum();
            out.push(CutConstraint { terminal: t, side, excluded: Some(v), requirement: 1, edges, value });
        }
    }
    let (value, side, edges) = min_cut(g, x, t, r, None);
    if value < 2.0 - CUT_TOL {
        let value = edges.iter().map(|&e| x[e]).sum();
        out.push(CutConstraint { terminal: t, side, excluded: None, requirement: 2, edges, value });
    }
    out
}

/// Every violated cut found by per-terminal max-flow computations: one
/// plain cut per terminal and one punctured cut per (terminal, vertex).
pub fn violated_cuts(g: &Graph, x: &[f64], terminals: &[VertexId], r: VertexId) -> Vec<CutConstraint> {
    terminals.iter().filter(|&&t| t != r).flat_map(|&t| cuts_for_terminal(g, x, t, r)).collect()
}

/// The most violated cut, or `None` when `x` is fractionally feasible.
/// Ties prefer requirement-1 cuts, then the smaller terminal, then the
/// smaller excluded vertex.
pub fn separation_oracle(g: &Graph, x: &[f64], terminals: &[VertexId], r: VertexId) -> Option<CutConstraint> {
    let mut best: Option<CutConstraint> = None;
    for cut in violated_cuts(g, x, terminals, r) {
        let better = match &best {
            None => true,
            Some(b) => {
                let (cv, bv) = (cut.violation(), b.violation());
                if (cv - bv).abs() > 1e-12 {
                    cv > bv
                } else {
                    (cut.requirement, cut.terminal, cut.excluded) < (b.requirement, b.terminal, b.excluded)
                }
            }
        };
        if better {
            best = Some(cut);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn triangle_cuts() {
        let g = build_graph(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)], &[(0, 1), (1, 1)], None).unwrap();
        assert_eq!(separation_oracle(&g, &[1.0, 1.0, 1.0], &[0], 2), None);
        let cut = separation_oracle(&g, &[0.0, 0.0, 0.0], &[0], 2).unwrap();
        assert_eq!(cut.requirement, 2);
        assert_eq!(cut.side, vec![0]);
    }

    #[test]
    fn path_on_square_needs_a_second_route() {
        // C4 with vertices 0..3; x = 1 on 0-1 and 1-2 only.
        let g = build_graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)], &[(0, 1)], None).unwrap();
        let cut = separation_oracle(&g, &[1.0, 1.0, 0.0, 0.0], &[0], 2).unwrap();
        assert_eq!(cut.requirement, 1);
        assert_eq!(cut.excluded, Some(1));
    }
}
