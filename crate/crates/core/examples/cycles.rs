//! Compare the cycle extractors with exhaustive search on a small graph.

use k2vc::cycle::{
    approx_min_density_nontrivial_cycle, avg_density_cycle_deletion, avg_density_cycle_recursive,
    min_density_cycle_parametric,
};
use k2vc::driver::{generate, GenKind, GenParams};
use k2vc::oracle::{brute_min_density_nontrivial_cycle, OracleBudget};

fn main() -> k2vc::Result<()> {
    let mut p = GenParams::new(GenKind::CycleChords, 9, 15, 5, 11);
    p.max_weight = 3;
    let g = generate(&p).graph;
    println!("graph density {:.3}", g.density()?.to_f64());

    let runs = [
        ("recursive", avg_density_cycle_recursive(&g)?),
        ("deletion", avg_density_cycle_deletion(&g)?),
        ("parametric", min_density_cycle_parametric(&g)?),
        ("approx", approx_min_density_nontrivial_cycle(&g)?),
        ("exhaustive", brute_min_density_nontrivial_cycle(&g, &OracleBudget::default())?),
    ];
    for (name, c) in runs {
        let vs: Vec<_> = c.vertices.iter().map(|v| v + 1).collect();
        println!("{name:>10}: density {:.3}, {} terminals, {vs:?}", c.density()?.to_f64(), c.terminal_count(&g));
    }
    Ok(())
}
