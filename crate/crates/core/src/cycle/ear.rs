use std::collections::BTreeSet;

use super::deletion::avg_density_cycle_deletion;
use crate::error::{Error, Result};
use crate::graph::disjoint_paths;
use crate::graph::{
    components_after_contraction, contract_cycle, is_two_connected, min_cost_two_disjoint_paths, Cycle, EdgeId, Graph,
    VertexId,
};
use crate::numeric::Ratio;

/// A path whose two end vertices lie on a cycle and whose interior avoids it.
/// `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ear {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Ear {
    pub fn cost(&self, g: &Graph) -> i64 {
        g.cost_of(self.edges.iter())
    }

    /// Weight of the interior vertices.
    pub fn weight(&self, g: &Graph) -> i64 {
        let n = self.vertices.len();
        if n <= 2 {
            0
        } else {
            self.vertices[1..n - 1].iter().map(|&v| g.weight(v)).sum()
        }
    }
}

/// A cycle through the two lowest-id terminals, built from their cheapest
/// pair of disjoint paths.
pub fn arbitrary_nontrivial_cycle(g: &Graph) -> Result<Cycle> {
    let terminals = g.terminals();
    if terminals.len() < 2 {
        return Err(Error::FewerThanTwoTerminals);
    }
    let pair = min_cost_two_disjoint_paths(g, terminals[0], terminals[1])?;
    Cycle::from_path_pair(g, &pair)
}

/// Replaces one side of `c` by `ear` when the ear is sparser than the cycle.
/// Of the two cycles `ear + S1` and `ear + S2` the sparser non-trivial one
/// below `dens(c)` is returned; ties keep the side that follows the cycle
/// order from the ear's first vertex.
pub fn improve_with_ear(g: &Graph, c: &Cycle, ear: &Ear) -> Result<Cycle> {
    validate_ear(g, c, ear)?;
    let (ear_cost, ear_weight) = (ear.cost(g) as i128, ear.weight(g) as i128);
    if ear_cost * c.weight as i128 >= c.cost as i128 * ear_weight {
        return Err(Error::EarNotImproving);
    }
    let u = ear.vertices[0];
    let v = *ear.vertices.last().unwrap();
    let rc = c.rotated_to(u).expect("ear endpoint on cycle");
    let j = rc.position(v).expect("ear endpoint on cycle");
    let len = rc.len();

    // ear u..v, then back from v to u along the cycle positions j-1 .. 1.
    let mut first_v = ear.vertices.clone();
    first_v.extend(rc.vertices[1..j].iter().rev());
    let mut first_e = ear.edges.clone();
    first_e.extend(rc.edges[0..j].iter().rev());

    // ear u..v, then forward from v along positions j+1 .. len-1 back to u.
    let mut second_v = ear.vertices.clone();
    second_v.extend(rc.vertices[j + 1..len].iter());
    let mut second_e = ear.edges.clone();
    second_e.extend(rc.edges[j..len].iter());

    let current = c.density()?;
    let mut best: Option<(Ratio, Cycle)> = None;
    for (vs, es) in [(first_v, first_e), (second_v, second_e)] {
        let cand = Cycle::new(g, vs, es)?;
        if !cand.is_nontrivial(g) {
            continue;
        }
        let d = cand.density()?;
        if d < current && best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, cand));
        }
    }
    best.map(|(_, c)| c).ok_or(Error::EarNotImproving)
}

fn validate_ear(g: &Graph, c: &Cycle, ear: &Ear) -> Result<()> {
    let bad = || Error::InvalidGraph("not an ear of the cycle".into());
    let n = ear.vertices.len();
    if n < 2 || ear.edges.len() + 1 != n {
        return Err(bad());
    }
    let (u, v) = (ear.vertices[0], ear.vertices[n - 1]);
    if u == v || !c.contains(u) || !c.contains(v) {
        return Err(bad());
    }
    let interior: BTreeSet<VertexId> = ear.vertices[1..n - 1].iter().copied().collect();
    if interior.len() != n - 2 || interior.iter().any(|&x| c.contains(x) || !g.contains_vertex(x)) {
        return Err(bad());
    }
    for (i, &e) in ear.edges.iter().enumerate() {
        if !g.is_edge_alive(e) || c.edges.contains(&e) {
            return Err(bad());
        }
        let edge = g.edge(e);
        if !(edge.touches(ear.vertices[i]) && edge.other(ear.vertices[i]) == ear.vertices[i + 1]) {
            return Err(bad());
        }
    }
    Ok(())
}

/// A non-trivial cycle of density at most `dens(g)` found by repeatedly
/// contracting the current cycle and recursing into the sparsest piece that
/// remains. If the improvement budget of `10*m*n` steps runs out, the
/// earring-deletion method is used instead.
pub fn avg_density_cycle_recursive(g: &Graph) -> Result<Cycle> {
    if g.terminal_count() < 2 {
        return Err(Error::FewerThanTwoTerminals);
    }
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let mut budget = (10 * g.num_edges() * g.num_vertices()).max(1);
    match improve_to(g, g.density()?, &mut budget)? {
        Some(c) => Ok(c),
        None => avg_density_cycle_deletion(g),
    }
}

fn improve_to(g: &Graph, target: Ratio, budget: &mut usize) -> Result<Option<Cycle>> {
    let mut c = arbitrary_nontrivial_cycle(g)?;
    while c.density()? > target {
        if *budget == 0 {
            return Ok(None);
        }
        *budget -= 1;
        match improve_once(g, &c, budget)? {
            Some(next) => c = next,
            None => return Ok(None),
        }
    }
    Ok(Some(c))
}

/// One improvement step for a non-trivial cycle denser than the graph.
fn improve_once(g: &Graph, c: &Cycle, budget: &mut usize) -> Result<Option<Cycle>> {
    let con = contract_cycle(g, c)?;
    let hub = con.hub;
    let mut best: Option<(Ratio, VertexId, Graph)> = None;
    for h in components_after_contraction(&con.graph, hub) {
        let Ok(d) = h.density() else { continue };
        let key = h.vertices().filter(|&x| x != hub).filter_map(|x| con.inverse[x]).min().unwrap_or(usize::MAX);
        let better = match &best {
            None => true,
            Some((bd, bk, _)) => d < *bd || (d == *bd && key < *bk),
        };
        if better {
            best = Some((d, key, h));
        }
    }
    let (h_density, _, h) = best.ok_or_else(|| Error::Internal("no weighted piece after contraction".into()))?;
    if h_density >= c.density()? {
        return Err(Error::Internal("sparsest piece is not sparser than the cycle".into()));
    }
    let to_host_v = |x: VertexId| con.inverse[x].expect("non-hub vertex");
    let to_host_e = |e: EdgeId| con.edge_origin[e];
    let on_cycle = |x: VertexId| c.contains(x);

    if h.terminal_count() >= 2 {
        let Some(inner) = improve_to(&h, h_density, budget)? else {
            return Ok(None);
        };
        let Some(rot) = inner.rotated_to(hub) else {
            let vs = inner.vertices.iter().map(|&x| to_host_v(x)).collect();
            let es = inner.edges.iter().map(|&e| to_host_e(e)).collect();
            return Cycle::new(g, vs, es).map(Some);
        };
        let k = rot.len();
        let first = g.edge(to_host_e(rot.edges[0]));
        let last = g.edge(to_host_e(rot.edges[k - 1]));
        let a1 = to_host_v(rot.vertices[1]);
        let ak = to_host_v(rot.vertices[k - 1]);
        let x = first.other(a1);
        let y = last.other(ak);
        debug_assert!(on_cycle(x) && on_cycle(y));
        let interior: Vec<VertexId> = rot.vertices[1..].iter().map(|&v| to_host_v(v)).collect();
        let edges: Vec<EdgeId> = rot.edges.iter().map(|&e| to_host_e(e)).collect();
        if x == y {
            let mut vs = vec![x];
            vs.extend(interior);
            return Cycle::new(g, vs, edges).map(Some);
        }
        let mut vs = vec![x];
        vs.extend(interior);
        vs.push(y);
        return improve_with_ear(g, c, &Ear { vertices: vs, edges }).map(Some);
    }

    let terminal = h.terminals().into_iter().next().ok_or_else(|| Error::Internal("piece without terminal".into()))?;
    let u = to_host_v(terminal);
    let allowed: BTreeSet<VertexId> = h.vertices().filter(|&x| x != hub).map(to_host_v).collect();
    let pair = disjoint_paths(g, u, &c.vertices, 1, &|x| allowed.contains(&x))
        .ok_or_else(|| Error::Internal("no fan from the piece to the cycle".into()))?;
    let mut vs: Vec<VertexId> = pair.paths[0].iter().rev().copied().collect();
    vs.extend(pair.paths[1][1..].iter());
    let mut es: Vec<EdgeId> = pair.edges[0].iter().rev().copied().collect();
    es.extend(pair.edges[1].iter());
    improve_with_ear(g, c, &Ear { vertices: vs, edges: es }).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    /// u=0, v=1, a=2, b=3, t=4.
    fn theta() -> Graph {
        let h = crate::SCALE;
        build_graph(
            5,
            &[(0, 2, h), (2, 1, h), (0, 3, h), (3, 1, h), (0, 4, h / 2), (4, 1, h / 2)],
            &[(2, h), (3, h), (4, h)],
            None,
        )
        .unwrap()
    }

    #[test]
    fn theta_recursive_meets_graph_density() {
        let g = theta();
        assert_eq!(g.density().unwrap(), Ratio::new(5, 3));
        let c = avg_density_cycle_recursive(&g).unwrap();
        assert!(c.is_nontrivial(&g));
        assert!(c.density().unwrap() <= Ratio::new(5, 3));
    }

    #[test]
    fn ear_replaces_expensive_side() {
        let g = theta();
        // Cycle u-a-v-b-u (cost 4, weight 2); ear u-t-v (cost 1, weight 1).
        let c = Cycle::new(&g, vec![0, 2, 1, 3], vec![0, 1, 3, 2]).unwrap();
        let ear = Ear { vertices: vec![0, 4, 1], edges: vec![4, 5] };
        let better = improve_with_ear(&g, &c, &ear).unwrap();
        assert_eq!(better.density().unwrap(), Ratio::new(3, 2));
        // A chord-free expensive ear does not improve.
        let c2 = Cycle::new(&g, vec![0, 4, 1, 2], vec![4, 5, 1, 0]).unwrap();
        let ear2 = Ear { vertices: vec![0, 3, 1], edges: vec![2, 3] };
        assert_eq!(improve_with_ear(&g, &c2, &ear2), Err(Error::EarNotImproving));
    }

    #[test]
    fn arbitrary_cycle_uses_lowest_terminals() {
        let g = theta();
        let c = arbitrary_nontrivial_cycle(&g).unwrap();
        assert!(c.contains(2) && c.contains(3));
    }
}
