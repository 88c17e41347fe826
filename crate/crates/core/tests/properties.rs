mod common;

use std::collections::BTreeSet;

use common::{oracle_graph, random_graph};
use k2vc::cycle::{avg_density_cycle_deletion, avg_density_cycle_recursive, min_density_cycle_parametric};
use k2vc::graph::{is_connected, is_two_connected, min_cost_two_disjoint_paths, two_connected_to_root};
use k2vc::matching::{max_weight_matching, min_weight_perfect_matching, Weight};
use k2vc::oracle::{enumerate_cycles, OracleBudget};
use k2vc::{Graph, Ratio, VertexId};
use proptest::prelude::*;

fn min_perfect_matching_dp(n: usize, edges: &[(usize, usize, Weight)]) -> Option<Weight> {
    let mut w = vec![vec![None; n]; n];
    for &(i, j, c) in edges {
        let cur: &mut Option<Weight> = &mut w[i][j];
        *cur = Some(cur.map_or(c, |x: Weight| x.min(c)));
        w[j][i] = w[i][j];
    }
    let full = (1usize << n) - 1;
    let mut dp: Vec<Option<Weight>> = vec![None; 1 << n];
    dp[0] = Some(0);
    for mask in 0..=full {
        let Some(base) = dp[mask] else { continue };
        let Some(i) = (0..n).find(|&i| mask & (1 << i) == 0) else { continue };
        for j in i + 1..n {
            if mask & (1 << j) == 0 {
                if let Some(c) = w[i][j] {
                    let next = mask | (1 << i) | (1 << j);
                    let val = base + c;
                    if dp[next].is_none_or(|x| val < x) {
                        dp[next] = Some(val);
                    }
                }
            }
        }
    }
    dp[full]
}

fn max_matching_dp(n: usize, edges: &[(usize, usize, Weight)]) -> Weight {
    let mut best = vec![0 as Weight; 1 << n];
    for mask in 1..(1usize << n) {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut b = best[rest];
        for &(u, v, c) in edges {
            let (a, o) = if u == i {
                (u, v)
            } else if v == i {
                (v, u)
            } else {
                continue;
            };
            if a == i && rest & (1 << o) != 0 {
                b = b.max(best[rest & !(1 << o)] + c);
            }
        }
        best[mask] = b;
    }
    best[(1 << n) - 1]
}

fn matching_instance() -> impl Strategy<Value = (usize, Vec<(usize, usize, Weight)>)> {
    (2usize..=10).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let len = pairs.len();
        (Just(n), proptest::collection::vec((any::<bool>(), 0i64..1_000_000_000_000), len)).prop_map(
            move |(n, picks)| {
                let edges = pairs
                    .iter()
                    .zip(picks)
                    .filter(|(_, (keep, _))| *keep)
                    .map(|(&(i, j), (_, w))| (i, j, w as Weight))
                    .collect();
                (n, edges)
            },
        )
    })
}

/// Menger by brute force: no single other vertex separates `t` from `r`,
/// and if they are adjacent, some path avoids their edge.
fn two_connected_by_deletion(g: &Graph, t: VertexId, r: VertexId) -> bool {
    let joined = |h: &Graph| {
        let mut seen = BTreeSet::from([t]);
        let mut stack = vec![t];
        while let Some(x) = stack.pop() {
            for &(y, _) in h.neighbors(x) {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.contains(&r)
    };
    if !joined(g) {
        return false;
    }
    for v in g.vertices().filter(|&v| v != t && v != r) {
        let mut h = g.clone();
        h.remove_vertex(v);
        if !joined(&h) {
            return false;
        }
    }
    let direct = g.edges_between(t, r);
    if direct.is_empty() {
        return true;
    }
    let mut h = g.clone();
    for e in direct {
        h.remove_edge(e);
    }
    joined(&h)
}

/// A connected graph on up to 9 vertices that need not be 2-connected.
fn sparse_graph(seed: u64) -> Graph {
    let g = oracle_graph(seed);
    let mut h = g.clone();
    let ids: Vec<_> = g.edge_ids().collect();
    for (i, e) in ids.into_iter().enumerate() {
        if (seed >> (i % 64)) & 1 == 1 && i % 3 == 0 {
            h.remove_edge(e);
        }
    }
    h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn perfect_matching_matches_bitmask_dp((n, edges) in matching_instance()) {
        let expected = min_perfect_matching_dp(n, &edges);
        let got = min_weight_perfect_matching(n, &edges);
        match (expected, got) {
            (None, None) => {}
            (Some(best), Some(mate)) => {
                let mut total: Weight = 0;
                for (v, &u) in mate.iter().enumerate() {
                    prop_assert_eq!(mate[u], v);
                    if v < u {
                        total += edges.iter().filter(|e| (e.0, e.1) == (v, u) || (e.0, e.1) == (u, v)).map(|e| e.2).min().unwrap();
                    }
                }
                prop_assert_eq!(total, best);
            }
            (e, g) => prop_assert!(false, "dp {:?} vs matching {:?}", e, g.is_some()),
        }
    }

    #[test]
    fn max_matching_matches_bitmask_dp((n, edges) in matching_instance()) {
        let mate = max_weight_matching(n, &edges, false);
        let mut total: Weight = 0;
        for (v, m) in mate.iter().enumerate() {
            if let Some(u) = *m {
                prop_assert_eq!(mate[u], Some(v));
                if v < u {
                    total += edges.iter().filter(|e| (e.0, e.1) == (v, u) || (e.0, e.1) == (u, v)).map(|e| e.2).max().unwrap();
                }
            }
        }
        prop_assert_eq!(total, max_matching_dp(n, &edges));
    }

    #[test]
    fn parametric_cycle_matches_enumeration(seed in any::<u64>()) {
        let g = oracle_graph(seed);
        let cycles = enumerate_cycles(&g, &OracleBudget::default()).unwrap();
        let best: Option<Ratio> = cycles.iter().filter(|c| c.weight > 0).filter_map(|c| c.density().ok()).min();
        match (best, min_density_cycle_parametric(&g)) {
            (None, Err(_)) => {}
            (Some(b), Ok(c)) => prop_assert_eq!(c.density().unwrap(), b),
            (b, c) => prop_assert!(false, "{:?} vs {:?}", b, c.map(|c| c.density())),
        }
    }

    #[test]
    fn menger_matches_vertex_deletion(seed in any::<u64>()) {
        let g = sparse_graph(seed);
        let vs: Vec<_> = g.vertices().collect();
        for &t in &vs {
            for &r in &vs {
                if t != r {
                    prop_assert_eq!(two_connected_to_root(&g, t, r).unwrap(), two_connected_by_deletion(&g, t, r), "t {} r {}", t, r);
                }
            }
        }
    }

    #[test]
    fn cheapest_disjoint_pair_is_cheapest_cycle_through_both(seed in any::<u64>()) {
        let g = sparse_graph(seed);
        let cycles = enumerate_cycles(&g, &OracleBudget::default()).unwrap();
        let vs: Vec<_> = g.vertices().collect();
        for (i, &s) in vs.iter().enumerate() {
            for &t in &vs[i + 1..] {
                let best = cycles.iter().filter(|c| c.contains(s) && c.contains(t)).map(|c| c.cost).min();
                match (best, min_cost_two_disjoint_paths(&g, s, t)) {
                    (None, Err(_)) => {}
                    (Some(b), Ok(p)) => {
                        prop_assert_eq!(p.cost, b);
                        prop_assert!(p.is_valid_in(&g, s, t));
                    }
                    (b, p) => prop_assert!(false, "{:?} vs {:?}", b, p.map(|p| p.cost)),
                }
            }
        }
    }

    #[test]
    fn extractors_never_exceed_graph_density(seed in any::<u64>(), n in 5usize..30, terminals in 2usize..30) {
        let g = random_graph(seed, n, n / 2, terminals.min(n), 1000, 1000);
        prop_assume!(is_two_connected(&g) && is_connected(&g));
        let dens = g.density().unwrap();
        for c in [avg_density_cycle_recursive(&g).unwrap(), avg_density_cycle_deletion(&g).unwrap()] {
            prop_assert!(c.is_nontrivial(&g));
            prop_assert!(c.density().unwrap() <= dens);
        }
    }
}
