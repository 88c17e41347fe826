use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::greedy::Stage;
use super::instance::{write_instance, Instance};
use crate::error::{Error, Result};
use crate::graph::{is_two_connected, two_connected_to_root, EdgeId, Graph, PathPair, VertexId};
use crate::numeric::{ceil_log2, format_scaled, harmonic, parse_scaled};
use crate::solution::{Certificate, Solution};

/// Hex SHA-256 of the canonical text form of an instance.
pub fn digest(inst: &Instance) -> String {
    let hash = Sha256::digest(write_instance(inst).as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

/// `8 ceil(log2 l) (H_k + 1) + 8 ceil(log2 k) + 2`, with both logarithms
/// clamped below at one.
pub fn ratio_bound(ell: u64, k: u64) -> f64 {
    let ll = ceil_log2(ell.max(1)).max(1) as f64;
    let lk = ceil_log2(k.max(1)).max(1) as f64;
    8.0 * ll * (harmonic(k) + 1.0) + 8.0 * lk + 2.0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEntry {
    /// 1-based position in the instance file.
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub cost: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveredEntry {
    pub vertex: usize,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    pub terminal: usize,
    /// Both paths as 1-based vertex sequences from the terminal.
    pub paths: [Vec<usize>; 2],
    /// 1-based edge ids of both paths.
    pub edges: [Vec<usize>; 2],
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundChecks {
    /// Every augmentation stage met `dens <= 8 ceil(log2 l) B / k'`.
    pub stage_density: Option<bool>,
    /// The pruning stage met its cost bound.
    pub prune: Option<bool>,
    /// The end-to-end ratio constant for this instance.
    pub ratio_bound: Option<f64>,
    /// Set when the result carries no approximation guarantee.
    pub heuristic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub digest: String,
    pub mode: super::instance::Mode,
    pub k: String,
    pub cost: String,
    pub edges: Vec<EdgeEntry>,
    pub covered: Vec<CoveredEntry>,
    /// 1-based root (rooted) or anchor (unrooted) of the certificate.
    pub root: Option<usize>,
    pub anchor: Option<usize>,
    pub certificate: Vec<PairEntry>,
    pub stages: Vec<StageEntry>,
    pub guess: Option<String>,
    pub pair: Option<[usize; 2]>,
    pub bounds: BoundChecks,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageEntry {
    pub kind: String,
    pub k_remaining: f64,
    pub density: f64,
    pub weight: f64,
    pub cost: f64,
    pub lp_density: f64,
    pub lp_value: f64,
}

impl From<&Stage> for StageEntry {
    fn from(s: &Stage) -> Self {
        let kind = serde_json::to_value(s.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        StageEntry {
            kind,
            k_remaining: s.k_remaining,
            density: s.density,
            weight: s.weight,
            cost: s.cost,
            lp_density: s.lp_density,
            lp_value: s.lp_value,
        }
    }
}

impl SolutionReport {
    pub fn new(inst: &Instance, sol: &Solution) -> SolutionReport {
        let g = &inst.graph;
        let (root, anchor) = match &sol.certificate {
            Certificate::Rooted { root, .. } => (Some(root + 1), None),
            Certificate::Unrooted { anchor, .. } => (None, Some(anchor + 1)),
        };
        SolutionReport {
            digest: digest(inst),
            mode: inst.mode,
            k: format_scaled(inst.k),
            cost: format_scaled(sol.cost),
            edges: sol
                .edges
                .iter()
                .map(|&e| {
                    let edge = g.edge(e);
                    EdgeEntry { id: e + 1, u: edge.u + 1, v: edge.v + 1, cost: format_scaled(edge.cost) }
                })
                .collect(),
            covered: sol
                .covered
                .iter()
                .map(|&(v, w)| CoveredEntry { vertex: v + 1, weight: format_scaled(w) })
                .collect(),
            root,
            anchor,
            certificate: sol
                .certificate
                .pairs()
                .iter()
                .map(|(t, p)| PairEntry {
                    terminal: t + 1,
                    paths: [one_based(&p.paths[0]), one_based(&p.paths[1])],
                    edges: [one_based(&p.edges[0]), one_based(&p.edges[1])],
                })
                .collect(),
            stages: Vec::new(),
            guess: None,
            pair: None,
            bounds: BoundChecks::default(),
            wall_time_ms: 0.0,
        }
    }

    /// Rebuilds the solution in 0-based ids, checking that every edge exists
    /// with the reported endpoints.
    pub fn to_solution(&self, g: &Graph) -> Result<Solution> {
        let bad = |msg: String| Error::InvalidGraph(msg);
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let id = e.id.checked_sub(1).ok_or_else(|| bad("edge id 0".into()))?;
            if id >= g.edge_bound() || !g.is_edge_alive(id) {
                return Err(bad(format!("edge {} does not exist", e.id)));
            }
            let edge = g.edge(id);
            let ends = (edge.u + 1, edge.v + 1);
            if ends != (e.u, e.v) && ends != (e.v, e.u) {
                return Err(bad(format!("edge {} does not join {} and {}", e.id, e.u, e.v)));
            }
            edges.push(id);
        }
        let mut covered = Vec::with_capacity(self.covered.len());
        for c in &self.covered {
            let w = parse_scaled(&c.weight).map_err(bad)?;
            covered.push((zero_based(c.vertex)?, w));
        }
        let mut pairs = Vec::with_capacity(self.certificate.len());
        for p in &self.certificate {
            let paths = [to_zero(&p.paths[0])?, to_zero(&p.paths[1])?];
            let pe = [to_zero(&p.edges[0])?, to_zero(&p.edges[1])?];
            let cost = pe.iter().flatten().filter(|&&e| e < g.edge_bound()).map(|&e| g.edge(e).cost).sum();
            pairs.push((zero_based(p.terminal)?, PathPair { paths, edges: pe, cost }));
        }
        let certificate = match (self.root, self.anchor) {
            (Some(r), _) => Certificate::Rooted { root: zero_based(r)?, pairs },
            (None, Some(a)) => Certificate::Unrooted { anchor: zero_based(a)?, pairs },
            (None, None) => return Err(bad("report has neither root nor anchor".into())),
        };
        let cost = parse_scaled(&self.cost).map_err(bad)?;
        Ok(Solution { edges, cost, covered, certificate })
    }
}

fn one_based(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|x| x + 1).collect()
}

fn zero_based(x: usize) -> Result<usize> {
    x.checked_sub(1).ok_or_else(|| Error::InvalidGraph("id 0 in a 1-based list".into()))
}

fn to_zero(xs: &[usize]) -> Result<Vec<usize>> {
    xs.iter().map(|&x| zero_based(x)).collect()
}

pub fn parse_report(text: &str) -> Result<SolutionReport> {
    serde_json::from_str(text).map_err(|e| Error::malformed(e.line(), e.to_string()))
}

/// Result of an independent check; `failures` names every problem found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub cost: String,
    pub covered_weight: String,
    pub failures: Vec<String>,
}

/// Re-checks a solution from scratch: edge existence, cost, per-terminal
/// connectivity by fresh flow computations, and the target weight. The
/// certificate is only checked for consistency with the edge set.
pub fn verify_solution(inst: &Instance, sol: &Solution) -> VerifyReport {
    let g = &inst.graph;
    let mut failures = Vec::new();
    let mut edges: BTreeSet<EdgeId> = BTreeSet::new();
    for &e in &sol.edges {
        if e >= g.edge_bound() || !g.is_edge_alive(e) {
            failures.push(format!("edge {} does not exist", e + 1));
        } else if !edges.insert(e) {
            failures.push(format!("edge {} listed twice", e + 1));
        }
    }
    let cost = g.cost_of(edges.iter());
    if cost != sol.cost {
        failures.push(format!("cost is {} but {} is claimed", format_scaled(cost), format_scaled(sol.cost)));
    }
    let sub = g.restrict_to_edges(edges.iter());
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    let mut weight = 0;
    let root = match &sol.certificate {
        Certificate::Rooted { root, .. } => Some(*root),
        Certificate::Unrooted { .. } => None,
    };
    if inst.root.is_some() && root != inst.root {
        failures.push("certificate root differs from the instance root".into());
    }
    if root.is_none() && !sol.covered.is_empty() && !is_two_connected(&sub) {
        failures.push("solution is not 2-connected".into());
    }
    for &(t, w) in &sol.covered {
        if t >= g.vertex_bound() || !g.contains_vertex(t) {
            failures.push(format!("covered vertex {} does not exist", t + 1));
            continue;
        }
        if !seen.insert(t) {
            failures.push(format!("terminal {} counted twice", t + 1));
            continue;
        }
        if w != g.weight(t) || w <= 0 {
            failures.push(format!(
                "terminal {} has weight {}, not {}",
                t + 1,
                format_scaled(g.weight(t)),
                format_scaled(w)
            ));
            continue;
        }
        let ok = match root {
            Some(r) => t != r && two_connected_to_root(&sub, t, r).unwrap_or(false),
            None => sub.contains_vertex(t),
        };
        if !ok {
            failures.push(format!("terminal {} is not 2-connected to the root", t + 1));
            continue;
        }
        weight += w;
    }
    for (t, pair) in sol.certificate.pairs() {
        if pair.all_edges().any(|e| !edges.contains(&e)) {
            failures.push(format!("certificate of terminal {} uses an edge outside the solution", t + 1));
        }
    }
    if weight < inst.k {
        failures.push(format!("insufficient weight: {} < {}", format_scaled(weight), format_scaled(inst.k)));
    }
    VerifyReport {
        pass: failures.is_empty(),
        cost: format_scaled(cost),
        covered_weight: format_scaled(weight),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::parse_instance;

    const TRI: &str = "p k2vc 3 3\nv 1 1\nv 2 1\ne 1 2 1\ne 2 3 1\ne 1 3 1\nr 3\nk 2\n";

    #[test]
    fn verifies_and_catches_mutations() {
        let inst = parse_instance(TRI).unwrap();
        let sol = Solution::rooted(&inst.graph, &[0, 1, 2], 2).unwrap();
        assert!(verify_solution(&inst, &sol).pass);

        let mut broken = sol.clone();
        broken.edges.remove(0);
        broken.cost = inst.graph.cost_of(broken.edges.iter());
        let rep = verify_solution(&inst, &broken);
        assert!(!rep.pass);
        assert!(rep.failures.iter().any(|f| f.contains("terminal 1")));

        let mut inflated = inst.clone();
        inflated.k = 3 * crate::SCALE;
        let rep = verify_solution(&inflated, &sol);
        assert!(rep.failures.iter().any(|f| f.starts_with("insufficient weight")));
    }

    #[test]
    fn report_round_trip() {
        let inst = parse_instance(TRI).unwrap();
        let sol = Solution::rooted(&inst.graph, &[0, 1, 2], 2).unwrap();
        let rep = SolutionReport::new(&inst, &sol);
        let text = serde_json::to_string(&rep).unwrap();
        let back = parse_report(&text).unwrap().to_solution(&inst.graph).unwrap();
        assert_eq!(back, sol);
    }

    #[test]
    fn ratio_constant() {
        assert_eq!(ratio_bound(2, 1), 8.0 * 2.0 + 8.0 + 2.0);
    }
}
