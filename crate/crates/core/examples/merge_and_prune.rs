//! Merge terminals into clusters, check the accounting, then prune.

use k2vc::driver::{generate, GenKind, GenParams};
use k2vc::graph::min_cost_two_disjoint_paths;
use k2vc::prune::{check_lemmas, merge_clusters, prune, PruneParams};
use k2vc::SCALE;

fn main() -> k2vc::Result<()> {
    let mut p = GenParams::new(GenKind::Random2Conn, 30, 40, 30, 8);
    p.max_weight = 4;
    p.max_cost = 50;
    let mut g = generate(&p).graph;
    let r = 0;
    g.set_weight(r, 0)?;
    let mut l_bound = 0;
    for t in g.terminals() {
        l_bound = l_bound.max(min_cost_two_disjoint_paths(&g, t, r)?.cost);
    }
    let params = PruneParams { k: 3 * SCALE, rho: g.density()?, l_bound, root: r };

    let forest = merge_clusters(&g, &params)?;
    println!(
        "{} merges over {} iterations, alpha {:.2}",
        forest.events.len(),
        forest.iterations,
        forest.alpha.to_f64()
    );
    for y in forest.large() {
        let cl = &forest.clusters[y];
        println!("  large cluster {y}: weight {}, {} edges", cl.weight / SCALE, cl.edges.len());
    }
    let report = check_lemmas(&g, &forest, &params);
    println!("all guarantees hold: {} {:?}", report.all_hold(), report.failures());

    let out = prune(&g, &params)?;
    println!(
        "pruned: cost {}, weight {}, bound {:.1}, within bound {}",
        out.solution.cost / SCALE,
        out.solution.covered_weight() / SCALE,
        params.cost_bound().to_f64() / SCALE as f64,
        out.within_bound
    );
    Ok(())
}
