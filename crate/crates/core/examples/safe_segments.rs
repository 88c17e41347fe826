//! Earrings of a cycle and the segments that can be deleted safely.

use k2vc::cycle::{delete_segment, earring_decomposition, safe_segment};
use k2vc::graph::is_two_connected;
use k2vc::{build_graph, Cycle};

fn main() -> k2vc::Result<()> {
    // a 10-cycle with one earring (vertex 10) clasping positions 2, 4 and 7
    let mut edges: Vec<(usize, usize, i64)> = (0..10).map(|i| (i, (i + 1) % 10, 1)).collect();
    edges.extend([(10, 2, 1), (10, 4, 1), (10, 7, 1)]);
    let g = build_graph(11, &edges, &[], None)?;
    let c = Cycle::new(&g, (0..10).collect(), (0..10).collect())?;

    let dec = earring_decomposition(&g, &c, 0)?;
    for (i, e) in dec.earrings.iter().enumerate() {
        println!("earring {i}: clasps {:?}, arc length {}", e.clasps, e.arc_length());
    }
    for s in dec.segments() {
        let mut h = g.clone();
        delete_segment(&mut h, &s);
        println!("segment {}..{}: safe = {}", s.start, s.end, is_two_connected(&h));
    }
    let s = safe_segment(&g, &c, 0)?;
    println!("chosen segment {}..{}, interior {:?}", s.start, s.end, s.interior());
    Ok(())
}
