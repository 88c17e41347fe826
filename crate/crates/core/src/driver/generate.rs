use std::collections::BTreeSet;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::instance::Instance;
use crate::graph::{Graph, VertexId};
use crate::numeric::SCALE;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// A Hamiltonian cycle plus random chords.
    CycleChords,
    /// Random ears grown from a triangle, then random extra edges.
    Random2Conn,
    /// A rectangular grid with about `n` vertices; `m` is ignored.
    Grid,
}

impl FromStr for GenKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cycle-chords" => Ok(GenKind::CycleChords),
            "random-2conn" => Ok(GenKind::Random2Conn),
            "grid" => Ok(GenKind::Grid),
            _ => Err(format!("unknown generator `{s}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenParams {
    pub kind: GenKind,
    pub n: usize,
    pub m: usize,
    pub terminals: usize,
    pub seed: u64,
    /// Costs are drawn uniformly from `1..=max_cost` (natural units).
    pub max_cost: i64,
    /// Terminal weights are drawn uniformly from `1..=max_weight`.
    pub max_weight: i64,
    /// Target weight; defaults to half the terminal count, rounded up.
    pub k: Option<i64>,
}

impl GenParams {
    pub fn new(kind: GenKind, n: usize, m: usize, terminals: usize, seed: u64) -> GenParams {
        GenParams { kind, n, m, terminals, seed, max_cost: 1000, max_weight: 1, k: None }
    }
}

/// A random 2-connected instance (for `n >= 3`), unrooted.
pub fn generate(p: &GenParams) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let pairs = match p.kind {
        GenKind::CycleChords => cycle_chords(&mut rng, p.n.max(3), p.m),
        GenKind::Random2Conn => random_two_connected(&mut rng, p.n.max(3), p.m),
        GenKind::Grid => grid(p.n.max(4)),
    };
    let n = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0).max(p.n);
    let mut g = Graph::new(n);
    for (u, v) in pairs {
        let cost = rng.gen_range(1..=p.max_cost.max(1)) * SCALE;
        g.add_edge(u, v, cost).expect("generated edges are simple");
    }
    let mut vs: Vec<VertexId> = (0..n).collect();
    vs.shuffle(&mut rng);
    let mut terminals: Vec<VertexId> = vs.into_iter().take(p.terminals.min(n)).collect();
    terminals.sort_unstable();
    let mut total = 0;
    for t in terminals {
        let w = rng.gen_range(1..=p.max_weight.max(1)) * SCALE;
        total += w;
        g.set_weight(t, w).expect("vertex exists");
    }
    let k = p.k.map(|k| k * SCALE).unwrap_or_else(|| (p.terminals.min(n) as i64 + 1) / 2 * SCALE).min(total);
    Instance::new(g, k, None)
}

fn add_random_edges(rng: &mut ChaCha8Rng, n: usize, m: usize, set: &mut BTreeSet<(usize, usize)>) {
    let max = n * (n - 1) / 2;
    let target = m.min(max);
    while set.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            set.insert((u.min(v), u.max(v)));
        }
    }
}

fn cycle_chords(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut set = BTreeSet::new();
    for i in 0..n {
        let (u, v) = (order[i], order[(i + 1) % n]);
        set.insert((u.min(v), u.max(v)));
    }
    add_random_edges(rng, n, m, &mut set);
    set.into_iter().collect()
}

fn random_two_connected(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<(usize, usize)> {
    let mut set = BTreeSet::from([(0, 1), (1, 2), (0, 2)]);
    let mut next = 3;
    while next < n {
        // an ear with 1..=3 new interior vertices between two distinct old ones
        let len = rng.gen_range(1..=3).min(n - next);
        let a = rng.gen_range(0..next);
        let mut b = rng.gen_range(0..next - 1);
        if b >= a {
            b += 1;
        }
        let mut prev = a;
        for _ in 0..len {
            set.insert((prev.min(next), prev.max(next)));
            prev = next;
            next += 1;
        }
        set.insert((prev.min(b), prev.max(b)));
    }
    add_random_edges(rng, n, m, &mut set);
    set.into_iter().collect()
}

fn grid(n: usize) -> Vec<(usize, usize)> {
    let rows = ((n as f64).sqrt().floor() as usize).max(2);
    let cols = n.div_ceil(rows).max(2);
    let id = |r: usize, c: usize| r * cols + c;
    let mut out = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                out.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                out.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_two_connected;

    #[test]
    fn generated_graphs_are_two_connected() {
        for kind in [GenKind::CycleChords, GenKind::Random2Conn, GenKind::Grid] {
            for seed in 0..20 {
                let inst = generate(&GenParams::new(kind, 12, 18, 5, seed));
                assert!(is_two_connected(&inst.graph), "{kind:?} seed {seed}");
                assert_eq!(inst.graph.terminal_count(), 5);
            }
        }
    }

    #[test]
    fn deterministic_by_seed() {
        let p = GenParams::new(GenKind::Random2Conn, 15, 25, 6, 7);
        let a = super::super::write_instance(&generate(&p));
        let b = super::super::write_instance(&generate(&p));
        assert_eq!(a, b);
    }
}
