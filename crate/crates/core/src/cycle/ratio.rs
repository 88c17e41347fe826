use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Cycle, EdgeId, Graph, VertexId};
use crate::matching::min_weight_perfect_matching;
use crate::numeric::Ratio;

const MAX_ROUNDS: usize = 10_000;

/// A minimum-density cycle among all simple cycles with positive weight.
///
/// For a candidate ratio `lambda = p/q` every edge gets the integer weight
/// `2q*c(uv) - p*(w(u) + w(v))`, under which a cycle weighs `2q` times
/// `c(C) - lambda*w(C)`. A minimum-weight even-degree edge set (computed
/// exactly through a shortest-path closure and a perfect matching) is
/// negative iff some cycle has density below `lambda`; such a set splits into
/// simple cycles and the best of them becomes the next `lambda`. The ratios
/// strictly decrease and stop at the optimum.
pub fn min_density_cycle_parametric(g: &Graph) -> Result<Cycle> {
    let w_min = g.min_positive_weight().ok_or(Error::NoWeightedCycle)?;
    let mut lambda = Ratio::new(g.total_cost() as i128 + 1, w_min as i128);
    let mut best: Option<Cycle> = None;
    for _ in 0..MAX_ROUNDS {
        let (value, join) = min_zero_join(g, lambda);
        if value >= 0 {
            return best.ok_or(Error::NoWeightedCycle);
        }
        let mut round_best: Option<(Ratio, Cycle)> = None;
        for cycle in split_into_cycles(g, &join)? {
            if cycle.weight <= 0 {
                continue;
            }
            let d = cycle.density()?;
            if round_best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                round_best = Some((d, cycle));
            }
        }
        let (d, cycle) = round_best.ok_or_else(|| Error::Internal("negative join without weighted cycle".into()))?;
        if d >= lambda {
            return Err(Error::Internal("parametric search did not decrease".into()));
        }
        lambda = d.reduced();
        best = Some(cycle);
    }
    Err(Error::Internal("parametric search did not converge".into()))
}

/// Minimum total weight of an edge set with all degrees even under the
/// weights `2q*c(uv) - p*(w(u) + w(v))` for `lambda = p/q`. Returns the value
/// and the edge set.
pub fn min_zero_join(g: &Graph, lambda: Ratio) -> (i128, Vec<EdgeId>) {
    let (p, q) = (lambda.numer(), lambda.denom());
    let bound = g.edge_bound();
    let mut d = vec![0i128; bound];
    for (e, edge) in g.edges() {
        d[e] = 2 * q * edge.cost as i128 - p * (g.weight(edge.u) + g.weight(edge.v)) as i128;
    }
    let mut in_join = vec![false; bound];
    let mut parity = vec![false; g.vertex_bound()];
    for (e, edge) in g.edges() {
        if d[e] < 0 {
            in_join[e] = true;
            parity[edge.u] ^= true;
            parity[edge.v] ^= true;
        }
    }
    let odd: Vec<VertexId> = g.vertices().filter(|&v| parity[v]).collect();
    if !odd.is_empty() {
        let trees: Vec<(Vec<Option<i128>>, Vec<Option<EdgeId>>)> =
            odd.iter().map(|&s| shortest_paths(g, s, &d)).collect();
        let mut pairs = Vec::new();
        for i in 0..odd.len() {
            for j in i + 1..odd.len() {
                if let Some(dist) = trees[i].0[odd[j]] {
                    pairs.push((i, j, dist));
                }
            }
        }
        let mate =
            min_weight_perfect_matching(odd.len(), &pairs).expect("odd-degree vertices pair up inside each component");
        for i in 0..odd.len() {
            let j = mate[i];
            if j < i {
                continue;
            }
            let pred = &trees[i].1;
            let mut v = odd[j];
            while let Some(e) = pred[v] {
                in_join[e] ^= true;
                v = g.edge(e).other(v);
            }
        }
    }
    let join: Vec<EdgeId> = (0..bound).filter(|&e| in_join[e]).collect();
    let value = join.iter().map(|&e| d[e]).sum();
    (value, join)
}

fn shortest_paths(g: &Graph, s: VertexId, d: &[i128]) -> (Vec<Option<i128>>, Vec<Option<EdgeId>>) {
    let n = g.vertex_bound();
    let mut dist: Vec<Option<i128>> = vec![None; n];
    let mut pred: Vec<Option<EdgeId>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[s] = Some(0);
    heap.push(Reverse((0i128, s)));
    while let Some(Reverse((dv, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &(w, e) in g.neighbors(v) {
            let nd = dv + d[e].abs();
            if dist[w].is_none_or(|old| nd < old) {
                dist[w] = Some(nd);
                pred[w] = Some(e);
                heap.push(Reverse((nd, w)));
            }
        }
    }
    (dist, pred)
}

/// Splits an edge set with all degrees even into edge-disjoint simple cycles.
pub(crate) fn split_into_cycles(g: &Graph, edges: &[EdgeId]) -> Result<Vec<Cycle>> {
    let sub = g.restrict_to_edges(edges.iter());
    let mut used = vec![false; g.edge_bound()];
    let mut cursor = vec![0usize; g.vertex_bound()];
    let mut on_stack = vec![usize::MAX; g.vertex_bound()];
    let mut cycles = Vec::new();
    for start in sub.vertices() {
        let mut vstack = vec![start];
        let mut estack: Vec<EdgeId> = Vec::new();
        on_stack[start] = 0;
        while let Some(&v) = vstack.last() {
            let nbrs = sub.neighbors(v);
            while cursor[v] < nbrs.len() && used[nbrs[cursor[v]].1] {
                cursor[v] += 1;
            }
            if cursor[v] == nbrs.len() {
                if vstack.len() > 1 {
                    return Err(Error::Internal("edge set has an odd-degree vertex".into()));
                }
                on_stack[v] = usize::MAX;
                vstack.pop();
                continue;
            }
            let (w, e) = nbrs[cursor[v]];
            used[e] = true;
            if on_stack[w] != usize::MAX {
                let at = on_stack[w];
                let mut cyc_v: Vec<VertexId> = vstack.drain(at + 1..).collect();
                cyc_v.insert(0, w);
                let mut cyc_e: Vec<EdgeId> = estack.drain(at..).collect();
                cyc_e.push(e);
                for &x in &cyc_v[1..] {
                    on_stack[x] = usize::MAX;
                }
                cycles.push(Cycle::new(g, cyc_v, cyc_e)?);
            } else {
                on_stack[w] = vstack.len();
                vstack.push(w);
                estack.push(e);
            }
        }
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn bowtie_prefers_cheap_triangle() {
        let g = build_graph(
            5,
            &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (0, 3, 3), (3, 4, 3), (4, 0, 3)],
            &[(1, 1), (3, 1)],
            None,
        )
        .unwrap();
        let c = min_density_cycle_parametric(&g).unwrap();
        assert_eq!(c.density().unwrap(), Ratio::integer(3));
        assert!(c.contains(1));
    }

    #[test]
    fn barbell_walks_are_not_cycles() {
        // Two triangles joined through a heavy path; the closed walk using the
        // path twice would look cheap but is not a cycle.
        let g = build_graph(
            7,
            &[(0, 1, 10), (1, 2, 10), (2, 0, 10), (2, 3, 0), (3, 4, 0), (4, 5, 10), (5, 6, 10), (6, 4, 10)],
            &[(3, 100), (0, 1), (5, 1)],
            None,
        )
        .unwrap();
        let c = min_density_cycle_parametric(&g).unwrap();
        assert_eq!(c.density().unwrap(), Ratio::integer(30));
    }

    #[test]
    fn no_weighted_cycle() {
        let tree = build_graph(3, &[(0, 1, 1), (1, 2, 1)], &[(0, 1)], None).unwrap();
        assert_eq!(min_density_cycle_parametric(&tree), Err(Error::NoWeightedCycle));
        let tri = build_graph(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)], &[], None).unwrap();
        assert_eq!(min_density_cycle_parametric(&tri), Err(Error::NoWeightedCycle));
    }

    #[test]
    fn splitting_an_eulerian_set() {
        let g = build_graph(5, &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (0, 3, 1), (3, 4, 1), (4, 0, 1)], &[], None).unwrap();
        let cycles = split_into_cycles(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(cycles.len(), 2);
        assert!(cycles.iter().all(|c| c.len() == 3));
    }
}
