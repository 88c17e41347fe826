use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dens2vc::dens_2vc;
use crate::error::{Error, Result};
use crate::graph::{block_decomposition, min_cost_two_disjoint_paths, EdgeId, Graph, VertexId};
use crate::numeric::{to_natural, Ratio};
use crate::prune::{prune_in, PruneParams};
use crate::solution::{Certificate, Solution};

/// Demotes to non-terminals every terminal whose cheapest pair of disjoint
/// paths to `r` is missing or costs more than `bound`. The root never counts
/// as a terminal. Returns the new graph and the demoted vertices.
pub fn preprocess(g: &Graph, r: VertexId, bound: Option<i64>) -> (Graph, Vec<VertexId>) {
    let mut out = g.clone();
    let mut demoted = Vec::new();
    for t in g.terminals() {
        let keep = t != r
            && match min_cost_two_disjoint_paths(g, t, r) {
                Ok(pair) => bound.is_none_or(|b| pair.cost <= b),
                Err(_) => false,
            };
        if !keep {
            out.set_weight(t, 0).expect("vertex exists");
            demoted.push(t);
        }
    }
    (out, demoted)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StageKind {
    Augment,
    Prune,
}

/// One pass of the greedy loop.
#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub kind: StageKind,
    /// Remaining target weight before the stage (natural units).
    pub k_remaining: f64,
    /// Density of the subgraph found by the density subroutine.
    pub density: f64,
    /// Weight of the terminals that subgraph 2-connects to the root.
    pub weight: f64,
    /// Cost added by the stage.
    pub cost: f64,
    pub lp_density: f64,
    pub lp_value: f64,
    /// Bound checks recorded for the stage.
    pub density_bound_met: bool,
    pub prune_bound_met: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct RootedRun {
    pub solution: Solution,
    pub stages: Vec<Stage>,
    pub guess: Option<i64>,
}

/// The greedy loop for a rooted instance: repeatedly take a sparse subgraph
/// from the density subroutine while it covers no more than the remaining
/// target, then prune the first one that covers more.
pub fn solve_rooted(g: &Graph, k: i64, r: VertexId, guess: Option<i64>) -> Result<RootedRun> {
    if !g.contains_vertex(r) {
        return Err(Error::InvalidGraph(format!("root {r} is not a vertex")));
    }
    if k <= 0 {
        return Ok(RootedRun { solution: Solution::rooted(g, &[], r)?, stages: Vec::new(), guess });
    }
    let (mut current, _) = preprocess(g, r, guess);
    if current.total_weight() < k {
        return Err(Error::InfeasibleTarget);
    }
    let ell = current.terminal_count() as u64;
    let mut remaining = k;
    let mut chosen: BTreeSet<EdgeId> = BTreeSet::new();
    let mut stages = Vec::new();
    while remaining > 0 {
        let out = match dens_2vc(&current, r) {
            Ok(out) => out,
            Err(Error::NoFeasibleTerminal) => return Err(Error::InfeasibleTarget),
            Err(e) => return Err(e),
        };
        let h = &out.solution;
        let weight = h.covered_weight();
        let density_bound_met = match guess {
            Some(b) => {
                let lb = crate::numeric::ceil_log2(ell.max(1)).max(1) as f64;
                out.density.to_f64() <= 8.0 * lb * to_natural(b) / to_natural(remaining) + 1e-9
            }
            None => true,
        };
        let new_cost = current.cost_of(h.edges.iter().filter(|e| !chosen.contains(e)));
        if weight <= remaining {
            chosen.extend(h.edges.iter().copied());
            stages.push(Stage {
                kind: StageKind::Augment,
                k_remaining: to_natural(remaining),
                density: out.density.to_f64(),
                weight: to_natural(weight),
                cost: to_natural(new_cost),
                lp_density: out.lp_density,
                lp_value: out.rounding_lp,
                density_bound_met,
                prune_bound_met: None,
            });
            remaining -= weight;
            for &(t, _) in &h.covered {
                current.set_weight(t, 0)?;
            }
        } else {
            let sub = current.restrict_to_edges(h.edges.iter());
            let l_bound = match guess {
                Some(b) => b,
                None => sub
                    .terminals()
                    .into_iter()
                    .filter_map(|t| min_cost_two_disjoint_paths(&current, t, r).ok())
                    .map(|p| p.cost)
                    .max()
                    .unwrap_or(0),
            };
            let params = PruneParams { k: remaining, rho: out.density, l_bound, root: r };
            let pruned = prune_in(&sub, &current, &params)?;
            let cost = current.cost_of(pruned.solution.edges.iter().filter(|e| !chosen.contains(e)));
            chosen.extend(pruned.solution.edges.iter().copied());
            stages.push(Stage {
                kind: StageKind::Prune,
                k_remaining: to_natural(remaining),
                density: out.density.to_f64(),
                weight: to_natural(weight),
                cost: to_natural(cost),
                lp_density: out.lp_density,
                lp_value: out.rounding_lp,
                density_bound_met,
                prune_bound_met: Some(pruned.within_bound),
            });
            remaining = 0;
        }
    }
    let edges: Vec<EdgeId> = chosen.into_iter().collect();
    let solution = Solution::rooted(g, &edges, r)?;
    if solution.covered_weight() < k {
        return Err(Error::Internal("greedy union covers less than the target".into()));
    }
    Ok(RootedRun { solution, stages, guess })
}

/// Cost guesses `c_min, 2 c_min, 4 c_min, ...` up to the total cost, which is
/// always included as the last guess.
pub fn guess_values(g: &Graph) -> Vec<i64> {
    let total = g.total_cost();
    let Some(min) = g.edges().map(|(_, e)| e.cost).filter(|&c| c > 0).min() else {
        return vec![0];
    };
    let mut out = Vec::new();
    let mut b = min;
    while b <= total {
        out.push(b);
        b = match b.checked_mul(2) {
            Some(x) => x,
            None => break,
        };
    }
    if out.last() != Some(&total) {
        out.push(total);
    }
    out
}

/// Runs `solve` for every guess and keeps the cheapest success; earlier
/// guesses win ties.
pub fn guess_opt<F>(g: &Graph, mut solve: F) -> Result<(Solution, i64)>
where
    F: FnMut(i64) -> Result<Solution>,
{
    let mut best: Option<(Solution, i64)> = None;
    for b in guess_values(g) {
        match solve(b) {
            Ok(s) => {
                if best.as_ref().is_none_or(|(bs, _)| s.cost < bs.cost) {
                    best = Some((s, b));
                }
            }
            Err(Error::InfeasibleTarget | Error::Infeasible | Error::NoFeasibleTerminal) => {}
            Err(e) => return Err(e),
        }
    }
    best.ok_or(Error::InfeasibleTarget)
}

#[derive(Clone, Debug)]
pub struct UnrootedOptions {
    /// Explicit cost guess; `None` tries all guesses.
    pub guess: Option<i64>,
    /// Pairs tried when the graph has more than 25 vertices.
    pub pairs_cap: usize,
    pub seed: u64,
}

impl Default for UnrootedOptions {
    fn default() -> Self {
        UnrootedOptions { guess: None, pairs_cap: 200, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct UnrootedRun {
    pub solution: Solution,
    pub pair: (VertexId, VertexId),
    pub guess: Option<i64>,
    pub stages: Vec<Stage>,
    pub pairs_tried: usize,
}

/// Unrooted solve: for each guessed pair `u, v`, attach a new root to both
/// with zero-cost edges, solve the rooted instance, drop the root and add the
/// cheapest disjoint `u`-`v` path pair. The block through that pair is kept.
pub fn solve_unrooted(g: &Graph, k: i64, opts: &UnrootedOptions) -> Result<UnrootedRun> {
    let vertices: Vec<VertexId> = g.vertices().collect();
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            pairs.push((u, v));
        }
    }
    if vertices.len() > 25 && pairs.len() > opts.pairs_cap {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(opts.pairs_cap);
        pairs.sort_unstable();
    }
    let guesses = match opts.guess {
        Some(b) => vec![b],
        None => guess_values(g),
    };
    let mut best: Option<UnrootedRun> = None;
    let mut tried = 0;
    for &(u, v) in &pairs {
        let Ok(uv) = min_cost_two_disjoint_paths(g, u, v) else {
            continue;
        };
        if let Some(b) = &best {
            if uv.cost >= b.solution.cost {
                continue;
            }
        }
        tried += 1;
        let mut h = g.clone();
        let r = h.add_vertex(0);
        h.add_edge(r, u, 0)?;
        h.add_edge(r, v, 0)?;
        // runs with the same surviving terminals are identical
        let mut seen: BTreeSet<Vec<VertexId>> = BTreeSet::new();
        let distinct: Vec<i64> =
            guesses.iter().copied().filter(|&b| seen.insert(preprocess(&h, r, Some(b)).0.terminals())).collect();
        let runs: Vec<Option<RootedRun>> = distinct.par_iter().map(|&b| solve_rooted(&h, k, r, Some(b)).ok()).collect();
        for run in runs.into_iter().flatten() {
            let Some(sol) = convert(g, &run.solution, &uv.all_edges().collect::<Vec<_>>(), u, v) else {
                continue;
            };
            if sol.covered_weight() < k {
                continue;
            }
            if best.as_ref().is_none_or(|x| sol.cost < x.solution.cost) {
                best = Some(UnrootedRun {
                    solution: sol,
                    pair: (u, v),
                    guess: run.guess,
                    stages: run.stages,
                    pairs_tried: 0,
                });
            }
        }
    }
    let mut run = best.ok_or(Error::InfeasibleTarget)?;
    run.pairs_tried = tried;
    Ok(run)
}

/// Edges of `rooted` without the auxiliary root, plus the `u`-`v` pair, cut
/// down to the block that contains the pair.
fn convert(g: &Graph, rooted: &Solution, uv: &[EdgeId], u: VertexId, v: VertexId) -> Option<Solution> {
    let mut edges: BTreeSet<EdgeId> = rooted.edges.iter().copied().filter(|e| g.is_edge_alive(*e)).collect();
    edges.extend(uv.iter().copied());
    let sub = g.restrict_to_edges(edges.iter());
    let block = block_decomposition(&sub).into_iter().find(|b| {
        b.vertices.binary_search(&u).is_ok() && b.vertices.binary_search(&v).is_ok() && b.vertices.len() >= 3
    })?;
    Solution::unrooted(g, &block.edges).ok()
}

/// An empty unrooted answer for a non-positive target.
pub fn empty_unrooted() -> Solution {
    Solution {
        edges: Vec::new(),
        cost: 0,
        covered: Vec::new(),
        certificate: Certificate::Unrooted { anchor: 0, pairs: Vec::new() },
    }
}

/// Density of a solution over its covered weight, if any.
pub fn solution_density(s: &Solution) -> Option<Ratio> {
    Ratio::checked(s.cost as i128, s.covered_weight() as i128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::SCALE;

    const S: i64 = SCALE;

    fn tri() -> Graph {
        build_graph(3, &[(0, 1, S), (1, 2, S), (0, 2, S)], &[(0, S), (1, S)], None).unwrap()
    }

    fn c4() -> Graph {
        build_graph(4, &[(0, 1, S), (1, 2, S), (2, 3, S), (3, 0, S)], &[(0, S), (1, S), (2, S), (3, S)], None).unwrap()
    }

    #[test]
    fn preprocessing_bounds() {
        let (h, demoted) = preprocess(&tri(), 2, Some(3 * S));
        assert!(demoted.is_empty());
        assert_eq!(h.terminals(), vec![0, 1]);
        let (h, demoted) = preprocess(&c4(), 0, Some(0));
        assert_eq!(demoted, vec![0, 1, 2, 3]);
        assert_eq!(h.terminal_count(), 0);
    }

    #[test]
    fn guesses_double() {
        assert_eq!(guess_values(&c4()), vec![S, 2 * S, 4 * S]);
        assert_eq!(guess_values(&tri()), vec![S, 2 * S, 3 * S]);
    }

    #[test]
    fn rooted_triangle() {
        let run = solve_rooted(&tri(), 2 * S, 2, None).unwrap();
        assert_eq!(run.solution.cost, 3 * S);
        assert_eq!(solve_rooted(&tri(), 0, 2, None).unwrap().solution.cost, 0);
    }

    #[test]
    fn rooted_four_cycle() {
        let mut g = c4();
        g.set_weight(0, 0).unwrap();
        let run = solve_rooted(&g, 3 * S, 0, None).unwrap();
        assert_eq!(run.solution.cost, 4 * S);
    }

    #[test]
    fn unrooted_four_cycle() {
        let run = solve_unrooted(&c4(), 4 * S, &UnrootedOptions::default()).unwrap();
        assert_eq!(run.solution.cost, 4 * S);
    }

    #[test]
    fn two_vertices_are_infeasible() {
        let g = build_graph(2, &[(0, 1, S)], &[(0, S), (1, S)], None).unwrap();
        assert_eq!(solve_unrooted(&g, S, &UnrootedOptions::default()).unwrap_err(), Error::InfeasibleTarget);
    }
}
