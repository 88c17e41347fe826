//! Flow primitives: integer min-cost flow by successive shortest paths and a
//! floating-point max flow used by the cut separation routine.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
    cost: i64,
    rev: usize,
}

/// Min-cost flow with integer capacities and costs. Shortest paths use a
/// queue-based Bellman-Ford scanning arcs in insertion order, so results are
/// deterministic.
#[derive(Clone, Debug)]
pub struct MinCostFlow {
    graph: Vec<Vec<Arc>>,
    handles: Vec<(usize, usize, i64)>,
}

impl MinCostFlow {
    pub fn new(nodes: usize) -> Self {
        MinCostFlow { graph: vec![Vec::new(); nodes], handles: Vec::new() }
    }

    pub fn add_node(&mut self) -> usize {
        self.graph.push(Vec::new());
        self.graph.len() - 1
    }

    /// Adds a directed arc and returns a handle for [`MinCostFlow::flow_on`].
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        let fwd = self.graph[from].len();
        let bwd = self.graph[to].len() + usize::from(from == to);
        self.graph[from].push(Arc { to, cap, cost, rev: bwd });
        self.graph[to].push(Arc { to: from, cap: 0, cost: -cost, rev: fwd });
        self.handles.push((from, fwd, cap));
        self.handles.len() - 1
    }

    pub fn flow_on(&self, handle: usize) -> i64 {
        let (from, idx, cap) = self.handles[handle];
        cap - self.graph[from][idx].cap
    }

    /// Sends up to `limit` units from `s` to `t`; returns `(flow, cost)`.
    pub fn run(&mut self, s: usize, t: usize, limit: i64) -> (i64, i64) {
        let n = self.graph.len();
        let mut flow = 0;
        let mut cost = 0;
        while flow < limit {
            let mut dist = vec![i64::MAX; n];
            let mut in_queue = vec![false; n];
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
            let mut queue = VecDeque::new();
            dist[s] = 0;
            queue.push_back(s);
            in_queue[s] = true;
            while let Some(v) = queue.pop_front() {
                in_queue[v] = false;
                for (i, arc) in self.graph[v].iter().enumerate() {
                    if arc.cap > 0 && dist[v] + arc.cost < dist[arc.to] {
                        dist[arc.to] = dist[v] + arc.cost;
                        prev[arc.to] = Some((v, i));
                        if !in_queue[arc.to] {
                            in_queue[arc.to] = true;
                            queue.push_back(arc.to);
                        }
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            let mut push = limit - flow;
            let mut v = t;
            while let Some((u, i)) = prev[v] {
                push = push.min(self.graph[u][i].cap);
                v = u;
            }
            let mut v = t;
            while let Some((u, i)) = prev[v] {
                self.graph[u][i].cap -= push;
                let rev = self.graph[u][i].rev;
                self.graph[v][rev].cap += push;
                v = u;
            }
            flow += push;
            cost += push * dist[t];
        }
        (flow, cost)
    }
}

#[derive(Clone, Debug)]
struct FArc {
    to: usize,
    cap: f64,
    rev: usize,
}

/// Edmonds-Karp max flow over `f64` capacities.
#[derive(Clone, Debug)]
pub struct MaxFlow {
    graph: Vec<Vec<FArc>>,
}

const FLOW_EPS: f64 = 1e-12;

impl MaxFlow {
    pub fn new(nodes: usize) -> Self {
        MaxFlow { graph: vec![Vec::new(); nodes] }
    }

    /// Adds an undirected edge of capacity `cap` in both directions.
    pub fn add_undirected(&mut self, u: usize, v: usize, cap: f64) {
        let iu = self.graph[u].len();
        let iv = self.graph[v].len();
        self.graph[u].push(FArc { to: v, cap, rev: iv });
        self.graph[v].push(FArc { to: u, cap, rev: iu });
    }

    pub fn run(&mut self, s: usize, t: usize) -> f64 {
        let n = self.graph.len();
        let mut total = 0.0;
        loop {
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                if v == t {
                    break;
                }
                for (i, arc) in self.graph[v].iter().enumerate() {
                    if arc.cap > FLOW_EPS && !seen[arc.to] {
                        seen[arc.to] = true;
                        prev[arc.to] = Some((v, i));
                        queue.push_back(arc.to);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut push = f64::INFINITY;
            let mut v = t;
            while let Some((u, i)) = prev[v] {
                push = push.min(self.graph[u][i].cap);
                v = u;
            }
            let mut v = t;
            while let Some((u, i)) = prev[v] {
                self.graph[u][i].cap -= push;
                let rev = self.graph[u][i].rev;
                self.graph[v][rev].cap += push;
                v = u;
            }
            total += push;
        }
    }

    /// Nodes reachable from `s` in the residual graph after [`MaxFlow::run`].
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.graph.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for arc in &self.graph[v] {
                if arc.cap > FLOW_EPS && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_cost_flow_prefers_cheap_paths() {
        let mut f = MinCostFlow::new(4);
        let a = f.add_arc(0, 1, 1, 1);
        let b = f.add_arc(1, 3, 1, 1);
        let c = f.add_arc(0, 2, 1, 5);
        f.add_arc(2, 3, 1, 5);
        f.add_arc(1, 2, 1, 0);
        assert_eq!(f.run(0, 3, 1), (1, 2));
        assert_eq!((f.flow_on(a), f.flow_on(b), f.flow_on(c)), (1, 1, 0));
        assert_eq!(f.run(0, 3, 5), (1, 10));
    }

    #[test]
    fn max_flow_and_cut() {
        let mut f = MaxFlow::new(4);
        f.add_undirected(0, 1, 0.5);
        f.add_undirected(0, 2, 1.0);
        f.add_undirected(1, 3, 1.0);
        f.add_undirected(2, 3, 0.25);
        let v = f.run(0, 3);
        assert!((v - 0.75).abs() < 1e-12);
        let side = f.source_side(0);
        assert!(side[0] && side[2] && !side[3]);
    }
}
