use super::bucket::BucketEntry;
use super::natural_cost;
use crate::error::{Error, Result};
use crate::graph::{two_connected_to_root, EdgeId, Graph, VertexId};
use crate::lp::{Cmp, LinearProgram, Var};
use crate::numeric::SCALE;

/// Optimal solution of the density LP.
///
/// Each terminal `t` sends `2 y_t` units of flow to the root; an edge carries
/// at most `x_e` in total and an intermediate vertex at most `y_t`. Coverage
/// is normalised by `sum (w_t / w_min) y_t = 1`, and `y_t <= 1`.
#[derive(Clone, Debug)]
pub struct FractionalDensSolution {
    pub root: VertexId,
    /// Terminals 2-connected to the root in the input, in id order.
    pub terminals: Vec<VertexId>,
    /// Terminals left out because they are not 2-connected to the root.
    pub dropped: Vec<VertexId>,
    /// `x[e]` for every edge id (zero for missing edges).
    pub x: Vec<f64>,
    /// `(terminal, y_t)` in terminal order.
    pub y: Vec<(VertexId, f64)>,
    /// Terminal weights divided by the lightest terminal's weight.
    pub relative_weight: Vec<f64>,
    /// Nonzero arc flows per terminal: `(from, to, edge, value)`.
    pub flows: Vec<(VertexId, Vec<(VertexId, VertexId, EdgeId, f64)>)>,
    /// `sum c_e x_e` in natural cost units.
    pub objective: f64,
    /// Weight of the lightest terminal (scaled).
    pub weight_unit: i64,
}

impl FractionalDensSolution {
    /// The LP lower bound on the density of any integral solution, in
    /// natural units.
    pub fn lp_density(&self) -> f64 {
        self.objective * SCALE as f64 / self.weight_unit as f64
    }

    pub fn bucket_entries(&self) -> Vec<BucketEntry> {
        self.y
            .iter()
            .zip(&self.relative_weight)
            .map(|(&(vertex, y), &weight)| BucketEntry { vertex, y, weight })
            .collect()
    }
}

pub fn solve_lp_dens(g: &Graph, r: VertexId) -> Result<FractionalDensSolution> {
    if !g.contains_vertex(r) {
        return Err(Error::InvalidGraph(format!("root {r} is not a vertex")));
    }
    let mut terminals = Vec::new();
    let mut dropped = Vec::new();
    for t in g.terminals() {
        if t == r {
            continue;
        }
        if two_connected_to_root(g, t, r)? {
            terminals.push(t);
        } else {
            dropped.push(t);
        }
    }
    if terminals.is_empty() {
        return Err(Error::NoFeasibleTerminal);
    }
    let weight_unit = terminals.iter().map(|&t| g.weight(t)).min().unwrap();
    let relative_weight: Vec<f64> = terminals.iter().map(|&t| g.weight(t) as f64 / weight_unit as f64).collect();

    let mut lp = LinearProgram::new();
    let edges: Vec<(EdgeId, crate::graph::Edge)> = g.edges().collect();
    let mut xvar: Vec<Option<Var>> = vec![None; g.edge_bound()];
    for &(e, edge) in &edges {
        xvar[e] = Some(lp.add_var(natural_cost(edge.cost), 0.0, 1.0));
    }
    let yvar: Vec<Var> = terminals.iter().map(|_| lp.add_var(0.0, 0.0, 1.0)).collect();
    let norm: Vec<(Var, f64)> = yvar.iter().zip(&relative_weight).map(|(&v, &w)| (v, w)).collect();
    lp.add_constraint(&norm, Cmp::Eq, 1.0);

    let mut arc_vars: Vec<Vec<(VertexId, VertexId, EdgeId, Var)>> = Vec::new();
    for (ti, &t) in terminals.iter().enumerate() {
        let y = yvar[ti];
        let mut arcs = Vec::new();
        let mut inflow: Vec<Vec<(Var, f64)>> = vec![Vec::new(); g.vertex_bound()];
        let mut outflow: Vec<Vec<(Var, f64)>> = vec![Vec::new(); g.vertex_bound()];
        for &(e, edge) in &edges {
            let mut pair = Vec::new();
            for (a, b) in [(edge.u, edge.v), (edge.v, edge.u)] {
                if b == t || a == r {
                    continue;
                }
                let f = lp.add_var(0.0, 0.0, f64::INFINITY);
                outflow[a].push((f, 1.0));
                inflow[b].push((f, 1.0));
                arcs.push((a, b, e, f));
                pair.push((f, 1.0));
            }
            if !pair.is_empty() {
                pair.push((xvar[e].unwrap(), -1.0));
                lp.add_constraint(&pair, Cmp::Le, 0.0);
            }
        }
        for v in g.vertices() {
            if v == r {
                continue;
            }
            if v == t {
                let mut terms = outflow[v].clone();
                terms.push((y, -2.0));
                lp.add_constraint(&terms, Cmp::Eq, 0.0);
                continue;
            }
            let mut balance = inflow[v].clone();
            balance.extend(outflow[v].iter().map(|&(f, _)| (f, -1.0)));
            if !balance.is_empty() {
                lp.add_constraint(&balance, Cmp::Eq, 0.0);
            }
            if !inflow[v].is_empty() {
                let mut through = inflow[v].clone();
                through.push((y, -1.0));
                lp.add_constraint(&through, Cmp::Le, 0.0);
            }
        }
        arc_vars.push(arcs);
    }
    let session = lp.solve()?;
    let mut x = vec![0.0; g.edge_bound()];
    for &(e, _) in &edges {
        x[e] = session.value(xvar[e].unwrap()).clamp(0.0, 1.0);
    }
    let y: Vec<(VertexId, f64)> = terminals.iter().zip(&yvar).map(|(&t, &v)| (t, session.value(v).max(0.0))).collect();
    let flows = terminals
        .iter()
        .zip(arc_vars)
        .map(|(&t, arcs)| {
            let nonzero = arcs
                .into_iter()
                .map(|(a, b, e, f)| (a, b, e, session.value(f)))
                .filter(|&(_, _, _, v)| v > 1e-12)
                .collect();
            (t, nonzero)
        })
        .collect();
    Ok(FractionalDensSolution {
        root: r,
        terminals,
        dropped,
        x,
        y,
        relative_weight,
        flows,
        objective: session.objective(),
        weight_unit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn triangle_lp() {
        let s = SCALE;
        let g = build_graph(3, &[(0, 1, s), (1, 2, s), (2, 0, s)], &[(0, s), (1, s)], None).unwrap();
        let sol = solve_lp_dens(&g, 2).unwrap();
        assert!((sol.objective - 1.5).abs() < 1e-7);
        assert!((sol.lp_density() - 1.5).abs() < 1e-7);
        for &(_, y) in &sol.y {
            assert!((y - 0.5).abs() < 1e-7);
        }
        for e in 0..3 {
            assert!((sol.x[e] - 0.5).abs() < 1e-7);
        }
    }

    #[test]
    fn no_feasible_terminal() {
        let g = build_graph(3, &[(0, 1, 1), (1, 2, 1)], &[(0, 1)], None).unwrap();
        assert!(matches!(solve_lp_dens(&g, 2), Err(Error::NoFeasibleTerminal)));
    }
}
