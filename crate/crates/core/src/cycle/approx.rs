use super::deletion::avg_density_cycle_deletion;
use crate::dens2vc::dens_2vc;
use crate::error::{Error, Result};
use crate::graph::{block_decomposition, is_two_connected, Cycle, Graph};
use crate::numeric::Ratio;

#[derive(Clone, Debug)]
pub struct ApproxCycleOptions {
    /// Number of lowest-id terminals tried as the root.
    pub max_roots: usize,
}

impl Default for ApproxCycleOptions {
    fn default() -> Self {
        ApproxCycleOptions { max_roots: 20 }
    }
}

/// A cycle with at least two terminals whose density is within a
/// logarithmic factor of the best such cycle, in any graph.
pub fn approx_min_density_nontrivial_cycle(g: &Graph) -> Result<Cycle> {
    approx_min_density_nontrivial_cycle_with(g, &ApproxCycleOptions::default())
}

/// For each candidate root, solves the rooted density problem, then runs
/// earring deletion inside every block of the result that holds two
/// terminals. The sparsest cycle over all roots wins.
pub fn approx_min_density_nontrivial_cycle_with(g: &Graph, options: &ApproxCycleOptions) -> Result<Cycle> {
    let terminals = g.terminals();
    if terminals.len() < 2 {
        return Err(Error::FewerThanTwoTerminals);
    }
    let mut best: Option<(Ratio, Cycle)> = None;
    for &r in terminals.iter().take(options.max_roots.max(1)) {
        let outcome = match dens_2vc(g, r) {
            Ok(o) => o,
            Err(Error::NoFeasibleTerminal) => continue,
            Err(e) => return Err(e),
        };
        let h = g.restrict_to_edges(outcome.solution.edges.iter());
        for block in block_decomposition(&h) {
            let piece = h.restrict_to_edges(block.edges.iter());
            if piece.terminal_count() < 2 || !is_two_connected(&piece) {
                continue;
            }
            let c = avg_density_cycle_deletion(&piece)?;
            let d = c.density()?;
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, c));
            }
        }
    }
    best.map(|(_, c)| c).ok_or(Error::NoNontrivialCycle)
}
