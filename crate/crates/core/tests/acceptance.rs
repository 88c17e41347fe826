//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use common::{oracle_graph, random_graph, S};
use k2vc::cycle::{
    avg_density_cycle_deletion, avg_density_cycle_recursive, delete_segment, earring_decomposition,
    min_density_cycle_parametric,
};
use k2vc::dens2vc::{dens_2vc, min_cost_2vc_subgraph};
use k2vc::driver::{ratio_bound, solve_rooted, solve_unrooted, verify_solution, Instance, UnrootedOptions};
use k2vc::graph::{is_two_connected, min_cost_two_disjoint_paths, two_connected_to_root};
use k2vc::numeric::{ceil_log2, to_natural};
use k2vc::oracle::{brute_dens2vc, brute_k2vc, enumerate_cycles, OracleBudget};
use k2vc::prune::{check_lemmas, merge_clusters, prune, PruneParams};
use k2vc::{Cycle, Graph, Ratio, Solution, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

/// Solutions collected along the way for the verifier criterion.
#[derive(Default)]
struct Emitted {
    items: Vec<(Instance, Solution)>,
}

fn main() {
    let mut emitted = Emitted::default();
    let criteria: Vec<(&str, Box<dyn FnOnce(&mut Emitted) -> Verdict>)> = vec![
        ("1 cycle extraction on 200 random graphs", Box::new(|_| cycle_extraction())),
        ("2 parametric cycle matches enumeration", Box::new(|_| parametric_vs_enumeration())),
        ("3 segments in a critical arc are safe", Box::new(|_| safe_segments())),
        ("4 rounding within twice the LP and feasible", Box::new(|_| rounding_contract())),
        ("5 density subroutine bound", Box::new(|_| dens_bound())),
        ("6 cluster merging guarantees", Box::new(|_| merge_lemmas())),
        ("7 pruning weight, connectivity and cost", Box::new(prune_bound)),
        ("8 end-to-end ratio against the oracle", Box::new(end_to_end)),
        ("9 verifier passes emitted solutions, catches mutations", Box::new(verifier)),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let v = run(&mut emitted);
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {name}: {status} ({}; {:.1}s)", v.detail, start.elapsed().as_secs_f64());
        if !v.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn is_simple_cycle(g: &Graph, c: &Cycle) -> bool {
    Cycle::new(g, c.vertices.clone(), c.edges.clone()).is_ok()
}

fn cycle_extraction() -> Verdict {
    let start = Instant::now();
    let mut ok = 0;
    let mut bad = Vec::new();
    for seed in 0..200u64 {
        let mut r = rng(seed);
        let n = r.gen_range(5..=40);
        let extra = r.gen_range(0..=n);
        let terminals = r.gen_range(2..=n);
        let g = random_graph(seed, n, extra, terminals, 1000, 1000);
        let dens = g.density().expect("terminals exist");
        let check = |c: k2vc::Result<Cycle>| match c {
            Ok(c) => is_simple_cycle(&g, &c) && c.terminal_count(&g) >= 2 && c.density().is_ok_and(|d| d <= dens),
            Err(_) => false,
        };
        if check(avg_density_cycle_recursive(&g)) && check(avg_density_cycle_deletion(&g)) {
            ok += 1;
        } else {
            bad.push(seed);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(ok == 200 && secs < 60.0, format!("{ok}/200 graphs, {secs:.1}s, failing seeds {bad:?}"))
}

fn parametric_vs_enumeration() -> Verdict {
    let budget = OracleBudget::default();
    let (mut graphs, mut mismatches) = (0, Vec::new());
    for seed in 0..80u64 {
        let g = oracle_graph(1000 + seed);
        let cycles = enumerate_cycles(&g, &budget).expect("oracle-scale graph");
        let best: Option<Ratio> = cycles.iter().filter(|c| c.weight > 0).filter_map(|c| c.density().ok()).min();
        let Some(best) = best else { continue };
        graphs += 1;
        match min_density_cycle_parametric(&g) {
            Ok(c) if is_simple_cycle(&g, &c) && c.density().ok() == Some(best) => {}
            _ => mismatches.push(seed),
        }
    }
    verdict(graphs >= 50 && mismatches.is_empty(), format!("{graphs} graphs, mismatches {mismatches:?}"))
}

fn safe_segments() -> Verdict {
    let budget = OracleBudget { max_vertices: 12, max_edges: 24, time: Duration::from_secs(60) };
    let (mut fixtures, mut checked, mut unsafe_found) = (0, 0usize, Vec::new());
    for seed in 0..40u64 {
        let mut r = rng(7000 + seed);
        let n = r.gen_range(5..=12);
        let extra = r.gen_range(1..=n.min(24 - n));
        let g = random_graph(7000 + seed, n, extra, 0, 10, 1);
        if g.num_vertices() > 12 || g.num_edges() > 24 {
            continue;
        }
        let mut cycles = enumerate_cycles(&g, &budget).expect("fixture within budget");
        cycles.shuffle(&mut r);
        cycles.truncate(60);
        let mut used = false;
        for c in &cycles {
            for &origin in &c.vertices {
                let dec = earring_decomposition(&g, c, origin).expect("valid cycle");
                let Some(h) = dec.min_arc_earring() else { continue };
                used = true;
                let (a, b) = (dec.earrings[h].first_clasp(), dec.earrings[h].last_clasp());
                for seg in dec.segments().iter().filter(|s| s.start >= a && s.end <= b) {
                    let mut h = g.clone();
                    delete_segment(&mut h, seg);
                    checked += 1;
                    if !is_two_connected(&h) {
                        unsafe_found.push((seed, origin));
                    }
                }
            }
        }
        if used {
            fixtures += 1;
        }
    }
    verdict(
        fixtures >= 30 && checked > 0 && unsafe_found.is_empty(),
        format!("{fixtures} fixtures, {checked} segments, unsafe {unsafe_found:?}"),
    )
}

fn rounding_contract() -> Verdict {
    let (mut calls, mut over, mut infeasible) = (0, 0, 0);
    for seed in 0..120u64 {
        let mut r = rng(9000 + seed);
        let g = if seed < 60 {
            oracle_graph(9000 + seed)
        } else {
            let n = r.gen_range(8..=20);
            random_graph(9000 + seed, n, n / 2, n / 2, 1000, 3)
        };
        let vs: Vec<VertexId> = g.vertices().collect();
        let root = *vs.choose(&mut r).unwrap();
        let mut required: Vec<VertexId> = g.terminals().into_iter().filter(|&t| t != root).collect();
        required.shuffle(&mut r);
        required.truncate(r.gen_range(1..=required.len().max(1)));
        let Ok(out) = min_cost_2vc_subgraph(&g, &required, root) else { continue };
        calls += 1;
        if to_natural(out.cost) > 2.0 * out.lp_value + 1e-6 {
            over += 1;
        }
        let sub = g.restrict_to_edges(out.edges.iter());
        if !required.iter().all(|&t| two_connected_to_root(&sub, t, root).unwrap_or(false)) {
            infeasible += 1;
        }
        if let Ok(d) = dens_2vc(&g, root) {
            calls += 1;
            if to_natural(d.solution.cost) > 2.0 * d.rounding_lp + 1e-6 {
                over += 1;
            }
        }
    }
    verdict(
        calls > 0 && over == 0 && infeasible == 0,
        format!("{calls} invocations, {over} above 2x LP, {infeasible} infeasible"),
    )
}

fn log_bound(ell: usize) -> i128 {
    ceil_log2(ell as u64).max(1) as i128
}

fn dens_bound() -> Verdict {
    let budget = OracleBudget::default();
    let (mut instances, mut over, mut lp_over, mut worst) = (0, 0, 0, 0.0f64);
    for seed in 0..80u64 {
        let mut g = oracle_graph(2000 + seed);
        let r = rng(2000 + seed).gen_range(0..g.num_vertices());
        g.set_weight(r, 0).unwrap();
        let Ok((opt, _)) = brute_dens2vc(&g, r, &budget) else { continue };
        let out = dens_2vc(&g, r).expect("a terminal is 2-connected to the root");
        instances += 1;
        let ell = g.terminal_count();
        if out.density > opt.scale(8 * log_bound(ell)) {
            over += 1;
        }
        if out.lp_density > opt.to_f64() + 1e-6 {
            lp_over += 1;
        }
        worst = worst.max(out.density.to_f64() / opt.to_f64());
    }
    verdict(
        instances >= 50 && over == 0 && lp_over == 0,
        format!("{instances} instances, {over} above bound, {lp_over} LP above optimum, worst ratio {worst:.3}"),
    )
}

/// Seeded merge instances with every vertex a terminal and total weight
/// above `8 k ceil(log2 k)`, the regime in which pruning runs the merge.
fn merge_instance(seed: u64) -> (Graph, PruneParams) {
    let mut r = rng(4000 + seed);
    let k = r.gen_range(2..=8i64);
    let lk = ceil_log2(k as u64).max(1) as i64;
    let mut attempt = 0;
    loop {
        let n = r.gen_range(10..=40);
        let w = (2 * (8 * k * lk + 1) / n as i64 + 1).max(1);
        let mut g = random_graph(4000 + seed * 31 + attempt, n, r.gen_range(0..=n / 2), n, 100, w);
        g.set_weight(0, 0).unwrap();
        attempt += 1;
        if g.num_vertices() <= 40 && g.total_weight() > 8 * k * lk * S {
            let rho = g.density().unwrap();
            let l_bound =
                g.terminals().iter().map(|&t| min_cost_two_disjoint_paths(&g, t, 0).unwrap().cost).max().unwrap();
            return (g, PruneParams { k: k * S, rho, l_bound, root: 0 });
        }
    }
}

fn merge_lemmas() -> Verdict {
    let mut ok = 0;
    let mut fails: Vec<(u64, Vec<&str>)> = Vec::new();
    for seed in 0..100u64 {
        let (g, params) = merge_instance(seed);
        match merge_clusters(&g, &params) {
            Ok(forest) => {
                let report = check_lemmas(&g, &forest, &params);
                if report.all_hold() {
                    ok += 1;
                } else {
                    fails.push((seed, report.failures()));
                }
            }
            Err(_) => fails.push((seed, vec!["error"])),
        }
    }
    let (outside, exceeded) = leftover_outside_regime();
    verdict(
        ok == 100,
        format!(
            "{ok}/100 runs, failures {fails:?}; outside the regime {exceeded}/{outside} unit-weight runs exceed the leftover bound"
        ),
    )
}

/// Diagnostic only: unit weights with `l <= 8 k ceil(log2 k)`, where pruning
/// never calls the merge and the leftover bound has no guarantee.
fn leftover_outside_regime() -> (usize, usize) {
    let (mut runs, mut exceeded) = (0, 0);
    for seed in 0..300u64 {
        let n = 10 + (seed % 31) as usize;
        let k = 2 + (seed % 7) as i64;
        let mut g = random_graph(seed, n, n / 2, n, 100, 1);
        g.set_weight(0, 0).unwrap();
        let lk = ceil_log2(k as u64).max(1) as i64;
        if g.total_weight() > 8 * k * lk * S {
            continue;
        }
        let params = PruneParams { k: k * S, rho: g.density().unwrap(), l_bound: 0, root: 0 };
        let Ok(forest) = merge_clusters(&g, &params) else { continue };
        runs += 1;
        if !check_lemmas(&g, &forest, &params).leftover.iter().all(|&b| b) {
            exceeded += 1;
        }
    }
    (runs, exceeded)
}

fn prune_bound(emitted: &mut Emitted) -> Verdict {
    let (mut runs, mut bad) = (0, Vec::new());
    for seed in 0..100u64 {
        let (g, params) = merge_instance(seed);
        runs += 1;
        match prune(&g, &params) {
            Ok(out) => {
                let inst = Instance::new(g.clone(), params.k, Some(0));
                let v = verify_solution(&inst, &out.solution);
                let cost_ok = Ratio::integer(out.solution.cost as i128) <= params.cost_bound();
                if !(v.pass && cost_ok) {
                    bad.push((seed, v.failures.len(), cost_ok));
                }
                emitted.items.push((inst, out.solution));
            }
            Err(_) => bad.push((seed, usize::MAX, false)),
        }
    }
    // prune calls made by the greedy solver on rooted instances
    let mut greedy_prunes = 0;
    for seed in 0..30u64 {
        let mut g = oracle_graph(5000 + seed);
        g.set_weight(0, 0).unwrap();
        let k = (g.total_weight() / S / 2).max(1) * S;
        let guess = g.total_cost();
        if let Ok(run) = solve_rooted(&g, k, 0, Some(guess)) {
            for st in &run.stages {
                if let Some(met) = st.prune_bound_met {
                    runs += 1;
                    greedy_prunes += 1;
                    if !met {
                        bad.push((5000 + seed, 0, false));
                    }
                }
            }
            emitted.items.push((Instance::new(g, k, Some(0)), run.solution));
        }
    }
    verdict(bad.is_empty(), format!("{runs} prune outputs ({greedy_prunes} inside the greedy loop), failures {bad:?}"))
}

fn end_to_end(emitted: &mut Emitted) -> Verdict {
    let budget = OracleBudget::default();
    let (mut instances, mut over, mut slow, mut worst) = (0, Vec::new(), 0, 1.0f64);
    for seed in 0..40u64 {
        let g = oracle_graph(6000 + seed);
        let total = g.total_weight() / S;
        let k = rng(6000 + seed).gen_range(1..=total.max(1)) * S;
        let Ok(opt) = brute_k2vc(&g, k, None, &budget) else { continue };
        let start = Instant::now();
        let run = match solve_unrooted(&g, k, &UnrootedOptions::default()) {
            Ok(run) => run,
            Err(_) => {
                over.push(seed);
                continue;
            }
        };
        if start.elapsed() > Duration::from_secs(30) {
            slow += 1;
        }
        instances += 1;
        let ratio = run.solution.cost as f64 / opt.cost as f64;
        worst = worst.max(ratio);
        let bound = ratio_bound(g.terminal_count() as u64, (k / S) as u64);
        if ratio > bound {
            over.push(seed);
        }
        emitted.items.push((Instance::new(g, k, None), run.solution));
    }
    verdict(
        instances >= 25 && over.is_empty() && slow == 0,
        format!("{instances} instances, max ratio {worst:.3}, over bound {over:?}, slow {slow}"),
    )
}

fn verifier(emitted: &mut Emitted) -> Verdict {
    let (mut passed, mut mutations, mut caught, mut structural) = (0, 0, 0, 0);
    let total = emitted.items.len();
    for (inst, sol) in &emitted.items {
        if verify_solution(inst, sol).pass {
            passed += 1;
        }
        for i in 0..sol.edges.len() {
            let mut m = sol.clone();
            m.edges.remove(i);
            mutations += 1;
            if !verify_solution(inst, &m).pass {
                caught += 1;
            }
            // the same mutation with an honest cost: only structure can catch it
            m.cost = inst.graph.cost_of(m.edges.iter());
            if !verify_solution(inst, &m).pass {
                structural += 1;
            }
        }
    }
    verdict(
        total > 0 && passed == total && caught == mutations,
        format!(
            "{passed}/{total} solutions pass, {caught}/{mutations} edge drops caught ({structural} with the cost recomputed)"
        ),
    )
}
