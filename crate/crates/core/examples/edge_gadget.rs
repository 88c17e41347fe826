//! The edge-connectivity variant: the terminal-to-uniform gadget, and the
//! vertex-connectivity pipeline used as a heuristic on the original instance.

use k2vc::driver::{parse_instance, reduce_terminals_to_uniform_2ec, solve_instance, verify_report, SolveOptions};
use k2vc::graph::cut_vertices;

fn main() -> k2vc::Result<()> {
    let inst = parse_instance("p k2ec 4 5\nv 1 1\nv 3 1\ne 1 2 1\ne 2 3 1\ne 3 4 1\ne 4 1 1\ne 1 3 5\nk 2\n")?;
    let reduced = reduce_terminals_to_uniform_2ec(&inst.graph, 2);
    println!(
        "gadget: {} -> {} vertices, {} -> {} edges, target {}",
        inst.graph.num_vertices(),
        reduced.graph.num_vertices(),
        inst.graph.num_edges(),
        reduced.graph.num_edges(),
        reduced.k / k2vc::SCALE
    );
    let cuts: Vec<_> = cut_vertices(&reduced.graph).iter().map(|v| v + 1).collect();
    println!("cut vertices of the gadget graph: {cuts:?}");

    let report = solve_instance(&inst, &SolveOptions::default())?;
    println!("cost {} (heuristic: {})", report.cost, report.bounds.heuristic);
    println!("verified: {}", verify_report(&inst, &report).pass);
    Ok(())
}
