use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{is_two_connected, Cycle, EdgeId, Graph, VertexId};

/// A piece hanging off a cycle: either a connected component of `G - V(C)`
/// with its attaching edges, or a single chord (an edge between two cycle
/// vertices that is not itself a cycle edge), which has no vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Earring {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    /// Sorted distinct positions on the cycle (origin at position 0) where
    /// the earring attaches.
    pub clasps: Vec<usize>,
}

impl Earring {
    pub fn first_clasp(&self) -> usize {
        self.clasps[0]
    }

    pub fn last_clasp(&self) -> usize {
        *self.clasps.last().unwrap()
    }

    pub fn arc_length(&self) -> usize {
        self.last_clasp() - self.first_clasp()
    }
}

#[derive(Clone, Debug)]
pub struct EarringDecomposition {
    /// The cycle rotated so that the origin sits at position 0.
    pub cycle: Cycle,
    /// Components ordered by smallest vertex id, then chords by edge id.
    pub earrings: Vec<Earring>,
}

impl EarringDecomposition {
    /// Union of all clasp positions, sorted.
    pub fn anchors(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.earrings.iter().flat_map(|e| e.clasps.iter().copied()).collect();
        set.into_iter().collect()
    }

    /// Index of the earring with the shortest arc; ties go to the smaller
    /// first clasp, then to the smaller index.
    pub fn min_arc_earring(&self) -> Option<usize> {
        (0..self.earrings.len()).min_by_key(|&i| (self.earrings[i].arc_length(), self.earrings[i].first_clasp(), i))
    }

    /// Segments between cyclically consecutive anchors.
    pub fn segments(&self) -> Vec<Segment> {
        let anchors = self.anchors();
        let len = self.cycle.len();
        let mut out = Vec::new();
        for (i, &a) in anchors.iter().enumerate() {
            let b = if i + 1 < anchors.len() { anchors[i + 1] } else { anchors[0] + len };
            if anchors.len() == 1 {
                break;
            }
            let vertices = (a..=b).map(|p| self.cycle.vertices[p % len]).collect();
            let edges = (a..b).map(|p| self.cycle.edges[p % len]).collect();
            out.push(Segment { start: a, end: b, vertices, edges });
        }
        out
    }
}

/// A stretch of the cycle between two anchors. Positions are relative to
/// the origin; `end` may exceed the cycle length when the segment wraps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Segment {
    pub fn interior(&self) -> &[VertexId] {
        &self.vertices[1..self.vertices.len() - 1]
    }
}

pub fn earring_decomposition(g: &Graph, c: &Cycle, origin: VertexId) -> Result<EarringDecomposition> {
    let cycle = c.rotated_to(origin).ok_or_else(|| Error::InvalidGraph("origin is not on the cycle".into()))?;
    Cycle::new(g, cycle.vertices.clone(), cycle.edges.clone())?;
    let mut pos = vec![usize::MAX; g.vertex_bound()];
    for (i, &v) in cycle.vertices.iter().enumerate() {
        pos[v] = i;
    }
    let cycle_edges: BTreeSet<EdgeId> = cycle.edges.iter().copied().collect();
    let mut earrings = Vec::new();
    let mut comp = vec![usize::MAX; g.vertex_bound()];
    for s in g.vertices() {
        if pos[s] != usize::MAX || comp[s] != usize::MAX {
            continue;
        }
        let id = earrings.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut vertices = vec![s];
        let mut edges = BTreeSet::new();
        let mut clasps = BTreeSet::new();
        while let Some(x) = stack.pop() {
            for &(y, e) in g.neighbors(x) {
                edges.insert(e);
                if pos[y] != usize::MAX {
                    clasps.insert(pos[y]);
                } else if comp[y] == usize::MAX {
                    comp[y] = id;
                    vertices.push(y);
                    stack.push(y);
                }
            }
        }
        vertices.sort_unstable();
        earrings.push(Earring { vertices, edges: edges.into_iter().collect(), clasps: clasps.into_iter().collect() });
    }
    for (e, edge) in g.edges() {
        if pos[edge.u] != usize::MAX && pos[edge.v] != usize::MAX && !cycle_edges.contains(&e) {
            let (a, b) = (pos[edge.u].min(pos[edge.v]), pos[edge.u].max(pos[edge.v]));
            earrings.push(Earring { vertices: Vec::new(), edges: vec![e], clasps: vec![a, b] });
        }
    }
    if earrings.iter().any(|e| e.clasps.is_empty()) {
        return Err(Error::NotTwoConnected);
    }
    Ok(EarringDecomposition { cycle, earrings })
}

/// A segment whose removal (edges and interior vertices) leaves the graph
/// 2-connected: the first segment inside the arc of a shortest-arc earring.
/// The origin is never an interior vertex of the returned segment.
pub fn safe_segment(g: &Graph, c: &Cycle, origin: VertexId) -> Result<Segment> {
    let dec = earring_decomposition(g, c, origin)?;
    let idx = dec.min_arc_earring().ok_or(Error::NoEarring)?;
    let first = dec.earrings[idx].first_clasp();
    let seg = dec
        .segments()
        .into_iter()
        .find(|s| s.start == first)
        .ok_or_else(|| Error::Internal("no segment starts at the earring's first clasp".into()))?;
    let mut rest = g.clone();
    delete_segment(&mut rest, &seg);
    if !is_two_connected(&rest) {
        return Err(Error::Internal("segment deletion broke 2-connectivity".into()));
    }
    Ok(seg)
}

/// Removes the segment's edges and interior vertices.
pub fn delete_segment(g: &mut Graph, seg: &Segment) {
    for &e in &seg.edges {
        g.remove_edge(e);
    }
    for &v in seg.interior() {
        g.remove_vertex(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    /// A 12-cycle c1..c12 (ids 0..11) with one earring vertex x attached at
    /// c4, c6 and c9, and a chord c1-c12 style back edge absent.
    fn twelve_cycle() -> (Graph, Cycle) {
        let mut g = Graph::new(13);
        let mut edges = Vec::new();
        for i in 0..12 {
            edges.push(g.add_edge(i, (i + 1) % 12, 1).unwrap());
        }
        for c in [3, 5, 8] {
            g.add_edge(12, c, 1).unwrap();
        }
        g.set_weight(0, 1).unwrap();
        let c = Cycle::new(&g, (0..12).collect(), edges).unwrap();
        (g, c)
    }

    #[test]
    fn clasps_and_arc() {
        let (g, c) = twelve_cycle();
        let dec = earring_decomposition(&g, &c, 0).unwrap();
        assert_eq!(dec.earrings.len(), 1);
        let e = &dec.earrings[0];
        assert_eq!(e.clasps, vec![3, 5, 8]);
        assert_eq!((e.first_clasp(), e.last_clasp(), e.arc_length()), (3, 8, 5));
        assert_eq!(dec.anchors(), vec![3, 5, 8]);
        let segs = dec.segments();
        assert_eq!(segs.len(), 3);
        assert_eq!((segs[2].start, segs[2].end), (8, 15));
    }

    #[test]
    fn safe_segment_keeps_two_connectivity() {
        let (g, c) = twelve_cycle();
        let seg = safe_segment(&g, &c, 0).unwrap();
        assert_eq!((seg.start, seg.end), (3, 5));
        assert_eq!(seg.interior(), &[4]);
    }

    #[test]
    fn bare_cycle_has_no_earring() {
        let mut g = Graph::new(3);
        let es = vec![g.add_edge(0, 1, 1).unwrap(), g.add_edge(1, 2, 1).unwrap(), g.add_edge(2, 0, 1).unwrap()];
        let c = Cycle::new(&g, vec![0, 1, 2], es).unwrap();
        assert_eq!(safe_segment(&g, &c, 0), Err(Error::NoEarring));
    }
}
