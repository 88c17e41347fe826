#![allow(dead_code)]

use k2vc::driver::{generate, GenKind, GenParams};
use k2vc::{Graph, SCALE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const S: i64 = SCALE;

/// A seeded 2-connected graph with `n` vertices (grids may round up).
pub fn random_graph(seed: u64, n: usize, extra: usize, terminals: usize, max_cost: i64, max_weight: i64) -> Graph {
    let kind = match seed % 3 {
        0 => GenKind::CycleChords,
        1 => GenKind::Random2Conn,
        _ => GenKind::Grid,
    };
    let kind = if kind == GenKind::Grid && n < 6 { GenKind::Random2Conn } else { kind };
    let mut p = GenParams::new(kind, n, n + extra, terminals, seed);
    p.max_cost = max_cost;
    p.max_weight = max_weight;
    generate(&p).graph
}

/// Small graphs the exhaustive oracles accept: at most 10 vertices and 20
/// edges.
pub fn oracle_graph(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.gen_range(4..=10);
    let extra = rng.gen_range(0..=(20 - n).min(n));
    let terminals = rng.gen_range(2..=n);
    let max_weight = if seed.is_multiple_of(2) { 1 } else { 5 };
    let g = random_graph(seed, n, extra, terminals, 50, max_weight);
    if g.num_vertices() <= 10 && g.num_edges() <= 20 {
        return g;
    }
    // grids can overshoot the edge limit
    let mut p = GenParams::new(GenKind::Random2Conn, n, n + extra, terminals, seed);
    p.max_cost = 50;
    p.max_weight = max_weight;
    generate(&p).graph
}
