use std::time::Instant;

use super::greedy::{guess_values, solve_rooted, solve_unrooted, RootedRun, Stage, StageKind, UnrootedOptions};
use super::instance::{Instance, Mode};
use super::report::{digest, ratio_bound, verify_solution, SolutionReport, StageEntry, VerifyReport};
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::numeric::SCALE;

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Overrides the root given in the instance file.
    pub root: Option<VertexId>,
    /// Fixed cost guess; `None` tries every guess.
    pub guess: Option<i64>,
    pub unrooted: UnrootedOptions,
}

/// Solves an instance in its own mode and wraps the result in a report.
///
/// `k2ec-terminal` instances are solved as unrooted vertex-connectivity
/// instances, which is feasible but carries no ratio bound. The uniform
/// gadget is not used here: every terminal is a cut vertex between its clique
/// and the rest, so the rewritten instance has no useful 2-connected answer.
pub fn solve_instance(inst: &Instance, opts: &SolveOptions) -> Result<SolutionReport> {
    let start = Instant::now();
    let root = opts.root.or(inst.root);
    let (target, mode) = match (inst.mode, root) {
        (Mode::K2ecTerminal, _) => (inst.clone(), Mode::K2ecTerminal),
        (_, Some(r)) => (Instance { root: Some(r), mode: Mode::Rooted, ..inst.clone() }, Mode::Rooted),
        (_, None) => (inst.clone(), Mode::Unrooted),
    };
    let g = &target.graph;
    let (solution, stages, guess, pair) = match target.root.filter(|_| mode == Mode::Rooted) {
        Some(r) => {
            let run = match opts.guess {
                Some(b) => solve_rooted(g, target.k, r, Some(b))?,
                None => best_rooted(&target, r)?,
            };
            (run.solution, run.stages, run.guess, None)
        }
        None => {
            if target.k <= 0 {
                (super::greedy::empty_unrooted(), Vec::new(), None, None)
            } else {
                let mut uo = opts.unrooted.clone();
                uo.guess = opts.guess;
                let run = solve_unrooted(g, target.k, &uo)?;
                (run.solution, run.stages, run.guess, Some([run.pair.0 + 1, run.pair.1 + 1]))
            }
        }
    };
    let mut report = SolutionReport::new(&target, &solution);
    report.digest = digest(inst);
    report.mode = mode;
    report.stages = stages.iter().map(StageEntry::from).collect();
    report.guess = guess.map(crate::numeric::format_scaled);
    report.pair = pair;
    report.bounds = bound_checks(&target, &stages, mode);
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn best_rooted(inst: &Instance, r: VertexId) -> Result<RootedRun> {
    let mut best: Option<RootedRun> = None;
    for b in guess_values(&inst.graph) {
        match solve_rooted(&inst.graph, inst.k, r, Some(b)) {
            Ok(run) => {
                if best.as_ref().is_none_or(|x| run.solution.cost < x.solution.cost) {
                    best = Some(run);
                }
            }
            Err(Error::InfeasibleTarget | Error::Infeasible | Error::NoFeasibleTerminal) => {}
            Err(e) => return Err(e),
        }
    }
    best.ok_or(Error::InfeasibleTarget)
}

fn bound_checks(inst: &Instance, stages: &[Stage], mode: Mode) -> super::report::BoundChecks {
    let heuristic = mode == Mode::K2ecTerminal;
    let ell = inst.graph.terminal_count() as u64;
    let k = ((inst.k + SCALE - 1) / SCALE).max(1) as u64;
    super::report::BoundChecks {
        stage_density: (!stages.is_empty()).then(|| stages.iter().all(|s| s.density_bound_met)),
        prune: stages.iter().find(|s| s.kind == StageKind::Prune).and_then(|s| s.prune_bound_met),
        ratio_bound: (!heuristic).then(|| ratio_bound(ell, k)),
        heuristic,
    }
}

/// Checks a report against the instance it claims to solve. Structural
/// problems with the report itself become failures rather than errors.
pub fn verify_report(inst: &Instance, report: &SolutionReport) -> VerifyReport {
    let mut pre = Vec::new();
    if report.digest != digest(inst) {
        pre.push("report digest does not match the instance".to_string());
    }
    let solution = match report.to_solution(&inst.graph) {
        Ok(s) => s,
        Err(e) => {
            pre.push(e.to_string());
            return VerifyReport { pass: false, cost: String::new(), covered_weight: String::new(), failures: pre };
        }
    };
    let mut target = inst.clone();
    if inst.mode == Mode::K2ecTerminal {
        target.root = None;
    }
    if report.root.is_some() && target.root.is_none() {
        target.root = report.root.map(|r| r - 1);
    }
    let mut out = verify_solution(&target, &solution);
    pre.append(&mut out.failures);
    out.failures = pre;
    out.pass = out.failures.is_empty();
    out
}
