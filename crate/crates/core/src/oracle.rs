//! Exhaustive reference solvers for small instances.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{block_decomposition, is_two_connected, Cycle, EdgeId, Graph, VertexId};
use crate::numeric::Ratio;
use crate::solution::Solution;

/// Size and time limits; larger inputs are refused.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub time: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 10, max_edges: 20, time: Duration::from_secs(60) }
    }
}

impl OracleBudget {
    pub fn admits(&self, g: &Graph) -> bool {
        g.num_vertices() <= self.max_vertices && g.num_edges() <= self.max_edges
    }

    fn check(&self, g: &Graph) -> Result<Deadline> {
        if !self.admits(g) {
            return Err(Error::BudgetExceeded(format!(
                "{} vertices and {} edges exceed {} and {}",
                g.num_vertices(),
                g.num_edges(),
                self.max_vertices,
                self.max_edges
            )));
        }
        Ok(Deadline { end: Instant::now() + self.time, ticks: 0 })
    }
}

struct Deadline {
    end: Instant,
    ticks: u32,
}

impl Deadline {
    fn tick(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(1024) && Instant::now() > self.end {
            return Err(Error::BudgetExceeded("time limit".into()));
        }
        Ok(())
    }
}

/// Total weight of the terminals other than `r` that share a block of at
/// least three vertices with `r`, i.e. those 2-connected to `r`.
fn rooted_weight(g: &Graph, r: VertexId) -> i64 {
    if !g.contains_vertex(r) {
        return 0;
    }
    let mut seen = BTreeSet::new();
    for b in block_decomposition(g) {
        if b.vertices.len() >= 3 && b.vertices.binary_search(&r).is_ok() {
            seen.extend(b.vertices.iter().copied().filter(|&v| v != r));
        }
    }
    seen.iter().map(|&v| g.weight(v)).sum()
}

/// Largest terminal weight of a single block with at least three vertices.
fn best_block_weight(g: &Graph) -> i64 {
    block_decomposition(g)
        .iter()
        .filter(|b| b.vertices.len() >= 3)
        .map(|b| b.vertices.iter().map(|&v| g.weight(v)).sum())
        .max()
        .unwrap_or(0)
}

/// Depth-first include/exclude search over edges sorted by cost. `visit`
/// sees every partial selection and returns whether to descend further;
/// `hopeful` sees the selection together with all undecided edges.
fn search(
    g: &Graph,
    deadline: &mut Deadline,
    visit: &mut dyn FnMut(&[EdgeId], i64) -> bool,
    hopeful: &mut dyn FnMut(&[EdgeId], &[EdgeId], i64) -> bool,
) -> Result<()> {
    let mut order: Vec<EdgeId> = g.edge_ids().collect();
    order.sort_by_key(|&e| (g.edge(e).cost, e));
    let mut chosen = Vec::new();
    rec(g, &order, 0, &mut chosen, 0, deadline, visit, hopeful)
}

#[allow(clippy::too_many_arguments)]
fn rec(
    g: &Graph,
    order: &[EdgeId],
    idx: usize,
    chosen: &mut Vec<EdgeId>,
    cost: i64,
    deadline: &mut Deadline,
    visit: &mut dyn FnMut(&[EdgeId], i64) -> bool,
    hopeful: &mut dyn FnMut(&[EdgeId], &[EdgeId], i64) -> bool,
) -> Result<()> {
    deadline.tick()?;
    if !visit(chosen, cost) || idx == order.len() {
        return Ok(());
    }
    let e = order[idx];
    chosen.push(e);
    let c = cost + g.edge(e).cost;
    if hopeful(chosen, &order[idx + 1..], c) {
        rec(g, order, idx + 1, chosen, c, deadline, visit, hopeful)?;
    }
    chosen.pop();
    if hopeful(chosen, &order[idx + 1..], cost) {
        rec(g, order, idx + 1, chosen, cost, deadline, visit, hopeful)?;
    }
    Ok(())
}

fn with_rest(g: &Graph, chosen: &[EdgeId], rest: &[EdgeId]) -> Graph {
    g.restrict_to_edges(chosen.iter().chain(rest.iter()))
}

/// Minimum-cost solution of weight at least `k`: a 2-connected subgraph, or
/// with a root, a subgraph in which the counted terminals are 2-connected to
/// the root.
pub fn brute_k2vc(g: &Graph, k: i64, root: Option<VertexId>, budget: &OracleBudget) -> Result<Solution> {
    let mut deadline = budget.check(g)?;
    if k <= 0 {
        return match root {
            Some(r) => Solution::rooted(g, &[], r),
            None => Err(Error::Infeasible),
        };
    }
    let feasible = |sub: &Graph| match root {
        Some(r) => rooted_weight(sub, r) >= k,
        None => is_two_connected(sub) && sub.total_weight() >= k,
    };
    let potential = |sub: &Graph| match root {
        Some(r) => rooted_weight(sub, r) >= k,
        None => best_block_weight(sub) >= k,
    };
    if !potential(g) {
        return Err(Error::Infeasible);
    }
    let best: std::cell::RefCell<Option<(i64, Vec<EdgeId>)>> = std::cell::RefCell::new(None);
    let bound = |b: &Option<(i64, Vec<EdgeId>)>| b.as_ref().map_or(i64::MAX, |(c, _)| *c);
    let mut visit = |chosen: &[EdgeId], cost: i64| {
        if cost >= bound(&best.borrow()) {
            return false;
        }
        if chosen.len() >= 2 && feasible(&g.restrict_to_edges(chosen.iter())) {
            *best.borrow_mut() = Some((cost, chosen.to_vec()));
            return false;
        }
        true
    };
    let mut hopeful = |chosen: &[EdgeId], rest: &[EdgeId], cost: i64| {
        cost < bound(&best.borrow()) && potential(&with_rest(g, chosen, rest))
    };
    search(g, &mut deadline, &mut visit, &mut hopeful)?;
    let (_, edges) = best.into_inner().ok_or(Error::Infeasible)?;
    match root {
        Some(r) => Solution::rooted(g, &edges, r),
        None => Solution::unrooted(g, &edges),
    }
}

/// Every simple cycle of `g` (each once), by backtracking from its lowest
/// vertex. Parallel edges give distinct two-vertex cycles.
pub fn enumerate_cycles(g: &Graph, budget: &OracleBudget) -> Result<Vec<Cycle>> {
    let mut deadline = budget.check(g)?;
    let mut out = Vec::new();
    let n = g.vertex_bound();
    let mut on_path = vec![false; n];
    for s in g.vertices() {
        let mut path_v = vec![s];
        let mut path_e: Vec<EdgeId> = Vec::new();
        on_path[s] = true;
        extend(g, s, &mut path_v, &mut path_e, &mut on_path, &mut out, &mut deadline)?;
        on_path[s] = false;
    }
    Ok(out)
}

fn extend(
    g: &Graph,
    s: VertexId,
    path_v: &mut Vec<VertexId>,
    path_e: &mut Vec<EdgeId>,
    on_path: &mut [bool],
    out: &mut Vec<Cycle>,
    deadline: &mut Deadline,
) -> Result<()> {
    deadline.tick()?;
    let v = *path_v.last().unwrap();
    for &(w, e) in g.neighbors(v) {
        if w == s && !path_e.is_empty() {
            // close the cycle once per direction pair
            let first = path_e[0];
            let closes = if path_v.len() == 2 { e > first } else { path_v[1] < v };
            if closes && e != first {
                let mut es = path_e.clone();
                es.push(e);
                out.push(Cycle::new(g, path_v.clone(), es)?);
            }
            continue;
        }
        if w <= s || on_path[w] {
            continue;
        }
        on_path[w] = true;
        path_v.push(w);
        path_e.push(e);
        extend(g, s, path_v, path_e, on_path, out, deadline)?;
        path_e.pop();
        path_v.pop();
        on_path[w] = false;
    }
    Ok(())
}

/// Minimum-density cycle among all simple cycles with positive weight.
pub fn brute_min_density_cycle(g: &Graph, budget: &OracleBudget) -> Result<Cycle> {
    best_cycle(enumerate_cycles(g, budget)?.into_iter().filter(|c| c.weight > 0)).ok_or(Error::NoWeightedCycle)
}

/// Minimum-density cycle through at least two terminals.
pub fn brute_min_density_nontrivial_cycle(g: &Graph, budget: &OracleBudget) -> Result<Cycle> {
    best_cycle(enumerate_cycles(g, budget)?.into_iter().filter(|c| c.is_nontrivial(g))).ok_or(Error::NoNontrivialCycle)
}

fn best_cycle(cycles: impl Iterator<Item = Cycle>) -> Option<Cycle> {
    let mut best: Option<(Ratio, Cycle)> = None;
    for c in cycles {
        let d = c.density().ok()?;
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, c));
        }
    }
    best.map(|(_, c)| c)
}

/// Exact rooted density optimum: the minimum over edge subsets of cost per
/// unit of terminal weight 2-connected to `r` inside the subset.
pub fn brute_dens2vc(g: &Graph, r: VertexId, budget: &OracleBudget) -> Result<(Ratio, Solution)> {
    let mut deadline = budget.check(g)?;
    if rooted_weight(g, r) == 0 {
        return Err(Error::NoFeasibleTerminal);
    }
    let best = min_density_subset(g, &mut deadline, &|sub| rooted_weight(sub, r))?;
    let (d, edges) = best.ok_or(Error::NoFeasibleTerminal)?;
    Ok((d, Solution::rooted(g, &edges, r)?))
}

/// Exact unrooted density optimum over 2-connected subgraphs with at least
/// two terminals.
pub fn brute_unrooted_dens2vc(g: &Graph, budget: &OracleBudget) -> Result<(Ratio, Solution)> {
    let mut deadline = budget.check(g)?;
    let value = |sub: &Graph| {
        if sub.terminal_count() >= 2 && is_two_connected(sub) {
            sub.total_weight()
        } else {
            0
        }
    };
    let best = min_density_subset(g, &mut deadline, &value)?;
    let (d, edges) = best.ok_or(Error::NoNontrivialCycle)?;
    Ok((d, Solution::unrooted(g, &edges)?))
}

/// Minimises `cost / value(subset)` over edge subsets with positive value.
/// `value` must not decrease when edges are added to a subgraph's closure of
/// candidates, so `cost(chosen) / value(chosen + rest)` is a lower bound.
fn min_density_subset(
    g: &Graph,
    deadline: &mut Deadline,
    value: &dyn Fn(&Graph) -> i64,
) -> Result<Option<(Ratio, Vec<EdgeId>)>> {
    let best: std::cell::RefCell<Option<(Ratio, Vec<EdgeId>)>> = std::cell::RefCell::new(None);
    let total = g.total_weight();
    let mut visit = |chosen: &[EdgeId], cost: i64| {
        if chosen.is_empty() {
            return true;
        }
        let w = value(&g.restrict_to_edges(chosen.iter()));
        if w > 0 {
            let d = Ratio::new(cost as i128, w as i128);
            let mut b = best.borrow_mut();
            if b.as_ref().is_none_or(|(bd, _)| d < *bd) {
                *b = Some((d, chosen.to_vec()));
            }
        }
        true
    };
    let mut hopeful = |chosen: &[EdgeId], rest: &[EdgeId], cost: i64| {
        let b = best.borrow();
        let Some((bd, _)) = b.as_ref() else {
            return true;
        };
        // the weight reachable is at most the terminal weight of what is left
        let reach = g.restrict_to_edges(chosen.iter().chain(rest.iter())).total_weight().min(total);
        reach > 0 && Ratio::new(cost as i128, reach as i128) < *bd
    };
    search(g, deadline, &mut visit, &mut hopeful)?;
    Ok(best.into_inner())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::SCALE;

    const S: i64 = SCALE;

    fn theta() -> Graph {
        build_graph(
            5,
            &[(0, 2, S), (2, 1, S), (0, 3, S), (3, 1, S), (0, 4, S / 2), (4, 1, S / 2)],
            &[(2, S), (3, S), (4, S)],
            None,
        )
        .unwrap()
    }

    fn tri() -> Graph {
        build_graph(3, &[(0, 1, S), (1, 2, S), (0, 2, S)], &[(0, S), (1, S)], None).unwrap()
    }

    #[test]
    fn counts_cycles() {
        let b = OracleBudget::default();
        assert_eq!(enumerate_cycles(&theta(), &b).unwrap().len(), 3);
        assert_eq!(enumerate_cycles(&tri(), &b).unwrap().len(), 1);
        let k4 =
            build_graph(4, &[(0, 1, S), (0, 2, S), (0, 3, S), (1, 2, S), (1, 3, S), (2, 3, S)], &[], None).unwrap();
        assert_eq!(enumerate_cycles(&k4, &b).unwrap().len(), 7);
    }

    #[test]
    fn theta_values() {
        let b = OracleBudget::default();
        let g = theta();
        assert_eq!(brute_min_density_nontrivial_cycle(&g, &b).unwrap().density().unwrap(), Ratio::new(3, 2));
        assert_eq!(brute_k2vc(&g, 2 * S, None, &b).unwrap().cost, 3 * S);
    }

    #[test]
    fn triangle_values() {
        let b = OracleBudget::default();
        let g = tri();
        assert_eq!(brute_k2vc(&g, 2 * S, None, &b).unwrap().cost, 3 * S);
        let (d, _) = brute_dens2vc(&g, 2, &b).unwrap();
        assert_eq!(d, Ratio::new(3, 2));
    }

    #[test]
    fn refuses_large_inputs() {
        let n = 11;
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, S)).collect();
        let g = build_graph(n, &edges, &[], None).unwrap();
        assert!(matches!(enumerate_cycles(&g, &OracleBudget::default()), Err(Error::BudgetExceeded(_))));
    }
}
