use super::earring::{delete_segment, safe_segment};
use super::ratio::min_density_cycle_parametric;
use crate::error::{Error, Result};
use crate::graph::{is_two_connected, Cycle, Graph};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeletionTrace {
    /// Number of minimum-density cycles computed.
    pub rounds: usize,
    /// Number of edges removed by segment deletions.
    pub deleted_edges: usize,
}

/// A non-trivial cycle of density at most `dens(g)`. Takes the minimum-density
/// cycle; while it carries only one terminal, that terminal becomes the
/// origin and a safe segment is deleted. Each deletion keeps every terminal
/// and 2-connectivity, and removes at least one edge.
pub fn avg_density_cycle_deletion(g: &Graph) -> Result<Cycle> {
    avg_density_cycle_deletion_traced(g).map(|(c, _)| c)
}

pub fn avg_density_cycle_deletion_traced(g: &Graph) -> Result<(Cycle, DeletionTrace)> {
    if g.terminal_count() < 2 {
        return Err(Error::FewerThanTwoTerminals);
    }
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let mut work = g.clone();
    let mut trace = DeletionTrace::default();
    for _ in 0..=g.num_edges() {
        let c = min_density_cycle_parametric(&work)?;
        trace.rounds += 1;
        let terminals = c.terminals(&work);
        if terminals.len() >= 2 {
            return Ok((c, trace));
        }
        let seg = safe_segment(&work, &c, terminals[0])?;
        trace.deleted_edges += seg.edges.len();
        delete_segment(&mut work, &seg);
    }
    Err(Error::Internal("segment deletion did not terminate".into()))
}
