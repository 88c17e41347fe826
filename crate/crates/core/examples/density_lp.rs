//! The density subroutine step by step: LP, bucket, rounding.

use k2vc::dens2vc::{bucket_select, dens_2vc, min_cost_2vc_subgraph, solve_lp_dens};
use k2vc::driver::{generate, GenKind, GenParams};
use k2vc::numeric::format_scaled;

fn main() -> k2vc::Result<()> {
    let mut g = generate(&GenParams::new(GenKind::Random2Conn, 12, 18, 7, 4)).graph;
    let r = 0;
    g.set_weight(r, 0)?;

    let frac = solve_lp_dens(&g, r)?;
    println!("LP density {:.3}", frac.lp_density());
    for (t, y) in &frac.y {
        println!("  y[{}] = {y:.3}", t + 1);
    }
    let bucket = bucket_select(&frac.bucket_entries(), frac.terminals.len());
    let members: Vec<_> = bucket.terminals.iter().map(|t| t + 1).collect();
    println!("bucket {} of {}: {members:?}, mass {:.3}", bucket.index, bucket.bucket_count, bucket.mass);

    let sub = min_cost_2vc_subgraph(&g, &bucket.terminals, r)?;
    println!("rounded cost {}, LP value {:.3}, fixed {} edges", format_scaled(sub.cost), sub.lp_value, sub.fixed.len());

    let out = dens_2vc(&g, r)?;
    println!("dens_2vc density {:.3} (bounds met: {:?})", out.density.to_f64(), out.bound);
    Ok(())
}
