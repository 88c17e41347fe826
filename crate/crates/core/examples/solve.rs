//! Solve random instances end to end and compare with the exact optimum.

use k2vc::driver::{generate, ratio_bound, solve_instance, verify_report, GenKind, GenParams, SolveOptions};
use k2vc::oracle::{brute_k2vc, OracleBudget};

fn main() -> k2vc::Result<()> {
    for seed in 0..5 {
        let inst = generate(&GenParams::new(GenKind::CycleChords, 9, 14, 6, seed));
        let report = solve_instance(&inst, &SolveOptions::default())?;
        let check = verify_report(&inst, &report);
        let opt = brute_k2vc(&inst.graph, inst.k, None, &OracleBudget::default())?;
        let cost: f64 = report.cost.parse().unwrap();
        println!(
            "seed {seed}: cost {cost}, optimum {}, ratio {:.3} (bound {:.0}), verified {}",
            opt.cost as f64 / 1e6,
            cost * 1e6 / opt.cost as f64,
            ratio_bound(inst.graph.terminal_count() as u64, (inst.k / k2vc::SCALE) as u64),
            check.pass
        );
    }
    Ok(())
}
