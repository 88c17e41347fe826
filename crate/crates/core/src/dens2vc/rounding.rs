use std::collections::{BTreeSet, HashSet};

use super::natural_cost;
use super::separation::violated_cuts;
use crate::error::{Error, Result};
use crate::graph::{two_connected_to_root, EdgeId, Graph, VertexId};
use crate::lp::{Cmp, LinearProgram, LpSession, Var};
use crate::numeric::SCALE;

const MAX_CUT_ROUNDS: usize = 5_000;
const HALF: f64 = 0.5 - 1e-6;
const ONE: f64 = 1.0 - 1e-6;

/// Output of the iterated-rounding 2-approximation.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoVcSubgraph {
    pub edges: Vec<EdgeId>,
    pub cost: i64,
    /// Optimum of the cut LP before any rounding, in natural cost units.
    pub lp_value: f64,
    /// Edges fixed to one, in the order they were fixed.
    pub fixed: Vec<EdgeId>,
    /// Number of LP re-solves caused by added cuts.
    pub cut_rounds: usize,
    /// `cost <= 2 * lp_value` up to `1e-6` in natural units.
    pub within_factor_two: bool,
}

/// Cheapest-found edge set in which every required terminal has two
/// internally disjoint paths to `r`. The cut LP is solved by cutting planes;
/// then the largest fractional edge (at least one half) is fixed to one and
/// the LP re-solved, until the fixed edges are feasible. Redundant edges are
/// finally dropped in order of decreasing cost.
pub fn min_cost_2vc_subgraph(g: &Graph, required: &[VertexId], r: VertexId) -> Result<TwoVcSubgraph> {
    let required: Vec<VertexId> =
        required.iter().copied().filter(|&t| t != r).collect::<BTreeSet<_>>().into_iter().collect();
    if required.is_empty() {
        return Ok(TwoVcSubgraph {
            edges: Vec::new(),
            cost: 0,
            lp_value: 0.0,
            fixed: Vec::new(),
            cut_rounds: 0,
            within_factor_two: true,
        });
    }
    if !g.contains_vertex(r) {
        return Err(Error::Infeasible);
    }
    for &t in &required {
        if !g.contains_vertex(t) || !two_connected_to_root(g, t, r)? {
            return Err(Error::Infeasible);
        }
    }
    let mut lp = LinearProgram::new();
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    let mut xvar: Vec<Option<Var>> = vec![None; g.edge_bound()];
    for &e in &edges {
        xvar[e] = Some(lp.add_var(natural_cost(g.edge(e).cost), 0.0, 1.0));
    }
    let mut seen: HashSet<(u8, Vec<EdgeId>)> = HashSet::new();
    for &t in &required {
        let star: Vec<EdgeId> = g.neighbors(t).iter().map(|&(_, e)| e).collect();
        let terms: Vec<(Var, f64)> = star.iter().map(|&e| (xvar[e].unwrap(), 1.0)).collect();
        lp.add_constraint(&terms, Cmp::Ge, 2.0);
        let mut key = star.clone();
        key.sort_unstable();
        seen.insert((2, key));
    }
    let mut session = lp.solve()?;
    let mut cut_rounds = 0;
    let mut fixed: Vec<EdgeId> = Vec::new();
    let mut is_fixed = vec![false; g.edge_bound()];
    let mut lp_value = None;
    loop {
        let x = separate(g, &mut session, &xvar, &required, r, &mut seen, &mut cut_rounds)?;
        lp_value.get_or_insert(session.objective());
        let ones: Vec<EdgeId> = edges.iter().copied().filter(|&e| is_fixed[e] || x[e] >= ONE).collect();
        if feasible(g, &ones, &required, r)? {
            fixed.extend(ones.iter().copied().filter(|&e| !is_fixed[e]));
            let chosen = prune_redundant(g, ones, &required, r)?;
            let cost = g.cost_of(chosen.iter());
            let lp_value = lp_value.unwrap();
            let within_factor_two = cost as f64 / SCALE as f64 <= 2.0 * lp_value + 1e-6;
            return Ok(TwoVcSubgraph { edges: chosen, cost, lp_value, fixed, cut_rounds, within_factor_two });
        }
        let pick = edges
            .iter()
            .copied()
            .filter(|&e| !is_fixed[e])
            .max_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap().then(b.cmp(&a)))
            .ok_or(Error::RoundingStall)?;
        if x[pick] < HALF {
            return Err(Error::RoundingStall);
        }
        is_fixed[pick] = true;
        fixed.push(pick);
        session.fix(xvar[pick].unwrap(), 1.0)?;
    }
}

fn separate(
    g: &Graph,
    session: &mut LpSession,
    xvar: &[Option<Var>],
    required: &[VertexId],
    r: VertexId,
    seen: &mut HashSet<(u8, Vec<EdgeId>)>,
    rounds: &mut usize,
) -> Result<Vec<f64>> {
    loop {
        let mut x = vec![0.0; g.edge_bound()];
        for (e, v) in xvar.iter().enumerate() {
            if let Some(v) = v {
                x[e] = session.value(*v).clamp(0.0, 1.0);
            }
        }
        let mut added = 0;
        for cut in violated_cuts(g, &x, required, r) {
            let mut key = cut.edges.clone();
            key.sort_unstable();
            if !seen.insert((cut.requirement, key)) {
                continue;
            }
            let terms: Vec<(Var, f64)> = cut.edges.iter().map(|&e| (xvar[e].unwrap(), 1.0)).collect();
            session.add_constraint(&terms, Cmp::Ge, cut.requirement as f64)?;
            added += 1;
        }
        if added == 0 {
            return Ok(x);
        }
        *rounds += 1;
        if *rounds > MAX_CUT_ROUNDS {
            return Err(Error::LpNumericalFailure("cutting-plane loop did not converge".into()));
        }
    }
}

fn feasible(g: &Graph, edges: &[EdgeId], required: &[VertexId], r: VertexId) -> Result<bool> {
    let sub = g.restrict_to_edges(edges.iter());
    for &t in required {
        if !sub.contains_vertex(t) || !sub.contains_vertex(r) || !two_connected_to_root(&sub, t, r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prune_redundant(g: &Graph, mut edges: Vec<EdgeId>, required: &[VertexId], r: VertexId) -> Result<Vec<EdgeId>> {
    let mut order = edges.clone();
    order.sort_by(|&a, &b| g.edge(b).cost.cmp(&g.edge(a).cost).then(b.cmp(&a)));
    for e in order {
        let trial: Vec<EdgeId> = edges.iter().copied().filter(|&f| f != e).collect();
        if feasible(g, &trial, required, r)? {
            edges = trial;
        }
    }
    edges.sort_unstable();
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn triangle_needs_all_edges() {
        let s = SCALE;
        let g = build_graph(3, &[(0, 1, s), (1, 2, s), (2, 0, s)], &[(0, s), (1, s)], None).unwrap();
        let out = min_cost_2vc_subgraph(&g, &[0, 1], 2).unwrap();
        assert_eq!(out.edges, vec![0, 1, 2]);
        assert_eq!(out.cost, 3 * s);
        assert!((out.lp_value - 3.0).abs() < 1e-7);
        assert!(out.within_factor_two);
    }

    #[test]
    fn empty_and_infeasible() {
        let g = build_graph(4, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)], &[(3, 1)], None).unwrap();
        assert_eq!(min_cost_2vc_subgraph(&g, &[], 2).unwrap().cost, 0);
        assert_eq!(min_cost_2vc_subgraph(&g, &[3], 2), Err(Error::Infeasible));
    }
}
