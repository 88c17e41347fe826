use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::numeric::{format_scaled, parse_scaled};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Rooted,
    Unrooted,
    /// Edge-connectivity instance with terminals; solved heuristically by the
    /// vertex-connectivity pipeline, without a ratio claim.
    K2ecTerminal,
}

/// A graph with a target weight. Vertex ids are 0-based in memory and 1-based
/// in files.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    /// Target terminal weight (scaled).
    pub k: i64,
    pub mode: Mode,
    pub root: Option<VertexId>,
}

impl Instance {
    pub fn new(graph: Graph, k: i64, root: Option<VertexId>) -> Instance {
        let mode = if root.is_some() { Mode::Rooted } else { Mode::Unrooted };
        Instance { graph, k, mode, root }
    }
}

/// Parses the line format:
///
/// ```text
/// c <comment>
/// p k2vc <n> <m>        (or `p k2ec` for the terminal edge-connectivity variant)
/// v <id> <weight>
/// e <u> <v> <cost>
/// r <id>                optional; makes the instance rooted
/// k <target>            optional; defaults to the total terminal weight
/// ```
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(bool, usize, usize)> = None;
    let mut graph = Graph::new(0);
    let mut edges = 0usize;
    let mut root = None;
    let mut k = None;
    let mut seen_weight = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut parts = raw.split_whitespace();
        let Some(tag) = parts.next() else { continue };
        let fields: Vec<&str> = parts.collect();
        let bad = |msg: &str| Error::malformed(line, msg);
        if tag == "c" {
            continue;
        }
        if tag == "p" {
            if header.is_some() {
                return Err(bad("duplicate p line"));
            }
            let [kind, n, m] = fields[..] else {
                return Err(bad("expected `p k2vc <n> <m>`"));
            };
            let ec = match kind {
                "k2vc" => false,
                "k2ec" => true,
                _ => return Err(bad("problem must be k2vc or k2ec")),
            };
            let n: usize = n.parse().map_err(|_| bad("bad vertex count"))?;
            let m: usize = m.parse().map_err(|_| bad("bad edge count"))?;
            header = Some((ec, n, m));
            graph = Graph::new(n);
            seen_weight = vec![false; n];
            continue;
        }
        let Some((_, n, m)) = header else {
            return Err(bad("missing p line before data"));
        };
        let vertex = |s: &str| -> Result<VertexId> {
            let id: usize = s.parse().map_err(|_| bad(&format!("bad vertex id `{s}`")))?;
            if id == 0 || id > n {
                return Err(bad(&format!("vertex id {id} out of range 1..={n}")));
            }
            Ok(id - 1)
        };
        let scaled = |s: &str| parse_scaled(s).map_err(|e| bad(&e));
        match tag {
            "v" => {
                let [id, w] = fields[..] else {
                    return Err(bad("expected `v <id> <weight>`"));
                };
                let v = vertex(id)?;
                if std::mem::replace(&mut seen_weight[v], true) {
                    return Err(bad("duplicate weight for vertex"));
                }
                graph.set_weight(v, scaled(w)?).map_err(|e| bad(&e.to_string()))?;
            }
            "e" => {
                let [u, v, c] = fields[..] else {
                    return Err(bad("expected `e <u> <v> <cost>`"));
                };
                let (u, v, c) = (vertex(u)?, vertex(v)?, scaled(c)?);
                if edges == m {
                    return Err(bad("more edges than declared"));
                }
                graph.add_edge(u, v, c).map_err(|e| bad(&e.to_string()))?;
                edges += 1;
            }
            "r" => {
                let [id] = fields[..] else {
                    return Err(bad("expected `r <id>`"));
                };
                if root.replace(vertex(id)?).is_some() {
                    return Err(bad("duplicate root"));
                }
            }
            "k" => {
                let [t] = fields[..] else {
                    return Err(bad("expected `k <target>`"));
                };
                if k.replace(scaled(t)?).is_some() {
                    return Err(bad("duplicate k"));
                }
            }
            other => return Err(bad(&format!("unknown line type `{other}`"))),
        }
    }
    let Some((ec, _, m)) = header else {
        return Err(Error::malformed(0, "missing p line"));
    };
    if edges != m {
        return Err(Error::malformed(0, format!("declared {m} edges, found {edges}")));
    }
    let k = k.unwrap_or_else(|| graph.total_weight());
    let mut inst = Instance::new(graph, k, root);
    if ec {
        inst.mode = Mode::K2ecTerminal;
    }
    inst.graph.set_root(root);
    Ok(inst)
}

/// Writes an instance in the format read by [`parse_instance`].
pub fn write_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let kind = if inst.mode == Mode::K2ecTerminal { "k2ec" } else { "k2vc" };
    let mut out = String::new();
    writeln!(out, "p {kind} {} {}", g.vertex_bound(), g.num_edges()).unwrap();
    for v in g.vertices() {
        if g.weight(v) > 0 {
            writeln!(out, "v {} {}", v + 1, format_scaled(g.weight(v))).unwrap();
        }
    }
    for (_, e) in g.edges() {
        writeln!(out, "e {} {} {}", e.u + 1, e.v + 1, format_scaled(e.cost)).unwrap();
    }
    if let Some(r) = inst.root {
        writeln!(out, "r {}", r + 1).unwrap();
    }
    writeln!(out, "k {}", format_scaled(inst.k)).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRI: &str = "c triangle\np k2vc 3 3\nv 1 1\nv 2 1\ne 1 2 1\ne 2 3 1\ne 1 3 1\nk 2\n";

    #[test]
    fn parses_triangle() {
        let inst = parse_instance(TRI).unwrap();
        assert_eq!(inst.graph.num_vertices(), 3);
        assert_eq!(inst.graph.terminals(), vec![0, 1]);
        assert_eq!(inst.k, 2 * crate::SCALE);
        assert_eq!(inst.mode, Mode::Unrooted);
    }

    #[test]
    fn round_trip() {
        let a = parse_instance(TRI).unwrap();
        let b = parse_instance(&write_instance(&a)).unwrap();
        assert_eq!(write_instance(&a), write_instance(&b));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_instance("v 1 1\n"), Err(Error::MalformedInput { line: 1, .. })));
        assert!(matches!(parse_instance("e 1 2 1\n"), Err(Error::MalformedInput { .. })));
        let seven = "p k2vc 2 0\nv 1 0.1234567\n";
        assert!(matches!(parse_instance(seven), Err(Error::MalformedInput { line: 2, .. })));
        let self_loop = "p k2vc 2 1\ne 1 1 5\n";
        assert!(matches!(parse_instance(self_loop), Err(Error::MalformedInput { line: 2, .. })));
        let negative = "p k2vc 2 0\nv 2 -1\n";
        assert!(matches!(parse_instance(negative), Err(Error::MalformedInput { line: 2, .. })));
        let dup = "p k2vc 2 2\ne 1 2 1\ne 2 1 1\n";
        assert!(matches!(parse_instance(dup), Err(Error::MalformedInput { line: 3, .. })));
    }
}
