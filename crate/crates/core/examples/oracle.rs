//! Exact answers by exhaustive search on a tiny instance.

use k2vc::driver::parse_instance;
use k2vc::oracle::{brute_dens2vc, brute_k2vc, brute_min_density_nontrivial_cycle, OracleBudget};
use k2vc::SCALE;

const THETA: &str = "\
c two poles joined by three routes
p k2vc 5 6
v 3 1
v 4 1
v 5 1
e 1 3 1
e 3 2 1
e 1 4 1
e 4 2 1
e 1 5 0.5
e 5 2 0.5
";

fn main() -> k2vc::Result<()> {
    let inst = parse_instance(THETA)?;
    let g = &inst.graph;
    let budget = OracleBudget::default();
    for k in 1..=3 {
        let s = brute_k2vc(g, k * SCALE, None, &budget)?;
        println!("k = {k}: optimum cost {}", s.cost as f64 / SCALE as f64);
    }
    let c = brute_min_density_nontrivial_cycle(g, &budget)?;
    println!("minimum-density cycle: density {}", c.density()?.to_f64());
    let (d, _) = brute_dens2vc(g, 0, &budget)?;
    println!("rooted at 1: optimum density {}", d.to_f64());
    Ok(())
}
