use super::instance::{Instance, Mode};
use crate::graph::Graph;
use crate::numeric::SCALE;

/// Turns an edge-connectivity instance with terminals into one where every
/// vertex is a unit terminal: each terminal gets `n` new vertices joined into
/// a zero-cost clique, two of which are tied to it by zero-cost edges, and the
/// target becomes `k * n`.
///
/// `k` counts terminals (natural units). The gadget is only sound for edge
/// connectivity; the result is marked accordingly.
pub fn reduce_terminals_to_uniform_2ec(g: &Graph, k: u64) -> Instance {
    let n = g.num_vertices();
    let terminals = g.terminals();
    let mut out = g.clone();
    for v in g.vertices() {
        out.set_weight(v, SCALE).expect("vertex exists");
    }
    for &t in &terminals {
        let gadget: Vec<_> = (0..n).map(|_| out.add_vertex(SCALE)).collect();
        for (i, &a) in gadget.iter().enumerate() {
            for &b in &gadget[i + 1..] {
                out.add_edge(a, b, 0).expect("fresh clique edge");
            }
        }
        for &a in gadget.iter().take(2) {
            out.add_edge(a, t, 0).expect("fresh attachment edge");
        }
    }
    Instance { graph: out, k: k as i64 * n as i64 * SCALE, mode: Mode::K2ecTerminal, root: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn single_terminal_gadget() {
        let g = build_graph(3, &[(0, 1, 5), (1, 2, 7), (0, 2, 9)], &[(0, SCALE)], None).unwrap();
        let inst = reduce_terminals_to_uniform_2ec(&g, 1);
        assert_eq!(inst.graph.num_vertices(), 6);
        assert_eq!(inst.graph.num_edges(), 3 + 3 + 2);
        assert_eq!(inst.graph.total_cost(), g.total_cost());
        assert_eq!(inst.k, 3 * SCALE);
        assert_eq!(inst.graph.terminal_count(), 6);
    }
}
