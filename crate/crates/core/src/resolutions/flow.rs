//! Integral max-flow with lower bounds.
//!
//! Ford–Fulkerson with depth-first augmenting paths. Neighbours are scanned in
//! ascending node order so the resulting flow is a deterministic function of
//! the network.

const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    residual: i64,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct FlowNetwork {
    arcs: Vec<Arc>,
    adjacency: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            adjacency: vec![Vec::new(); nodes],
        }
    }

    pub fn add_node(&mut self) -> usize {
        self.adjacency.push(Vec::new());
        self.adjacency.len() - 1
    }

    /// Adds `from → to` with capacity `cap`; returns the arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, residual: cap });
        self.arcs.push(Arc { to: from, residual: 0 });
        self.adjacency[from].push(id);
        self.adjacency[to].push(id + 1);
        id
    }

    /// Flow currently carried by arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.arcs[id ^ 1].residual
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let arcs = &self.arcs;
        for list in self.adjacency.iter_mut() {
            list.sort_by_key(|&a| (arcs[a].to, a));
        }
        let mut total = 0;
        loop {
            let mut visited = vec![false; self.adjacency.len()];
            let pushed = self.augment(source, sink, INF, &mut visited);
            if pushed == 0 {
                return total;
            }
            total += pushed;
        }
    }

    fn augment(&mut self, node: usize, sink: usize, limit: i64, visited: &mut [bool]) -> i64 {
        if node == sink {
            return limit;
        }
        visited[node] = true;
        for idx in 0..self.adjacency[node].len() {
            let a = self.adjacency[node][idx];
            let Arc { to, residual } = self.arcs[a];
            if residual > 0 && !visited[to] {
                let pushed = self.augment(to, sink, limit.min(residual), visited);
                if pushed > 0 {
                    self.arcs[a].residual -= pushed;
                    self.arcs[a ^ 1].residual += pushed;
                    return pushed;
                }
            }
        }
        0
    }
}

/// A flow problem whose arcs carry `[lower, upper]` bounds.
#[derive(Debug, Clone)]
pub(crate) struct BoundedFlow {
    network: FlowNetwork,
    excess: Vec<i64>,
    lower: Vec<i64>,
    arc_ids: Vec<usize>,
}

impl BoundedFlow {
    pub fn new(nodes: usize) -> Self {
        Self {
            network: FlowNetwork::new(nodes),
            excess: vec![0; nodes],
            lower: Vec::new(),
            arc_ids: Vec::new(),
        }
    }

    /// Returns a handle for [`BoundedFlow::flow`].
    pub fn add_arc(&mut self, from: usize, to: usize, lower: i64, upper: i64) -> usize {
        debug_assert!(0 <= lower && lower <= upper);
        self.excess[to] += lower;
        self.excess[from] -= lower;
        self.arc_ids.push(self.network.add_arc(from, to, upper - lower));
        self.lower.push(lower);
        self.arc_ids.len() - 1
    }

    /// Finds an integral circulation-compatible `source → sink` flow meeting
    /// every bound. Returns `false` if none exists.
    pub fn solve(&mut self, source: usize, sink: usize) -> bool {
        self.network.add_arc(sink, source, INF);
        let super_source = self.network.add_node();
        let super_sink = self.network.add_node();
        let mut demand = 0;
        for (node, &e) in self.excess.iter().enumerate() {
            if e > 0 {
                self.network.add_arc(super_source, node, e);
                demand += e;
            } else if e < 0 {
                self.network.add_arc(node, super_sink, -e);
            }
        }
        self.network.max_flow(super_source, super_sink) == demand
    }

    pub fn flow(&self, handle: usize) -> i64 {
        self.lower[handle] + self.network.flow(self.arc_ids[handle])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_max_flow() {
        // CLRS figure 26.1, max flow 23
        let mut g = FlowNetwork::new(6);
        for (u, v, c) in [
            (0, 1, 16),
            (0, 2, 13),
            (2, 1, 4),
            (1, 3, 12),
            (3, 2, 9),
            (2, 4, 14),
            (4, 3, 7),
            (3, 5, 20),
            (4, 5, 4),
        ] {
            g.add_arc(u, v, c);
        }
        assert_eq!(g.max_flow(0, 5), 23);
    }

    #[test]
    fn lower_bounds_are_respected() {
        let mut g = BoundedFlow::new(4);
        let a = g.add_arc(0, 1, 2, 3);
        let b = g.add_arc(0, 2, 0, 5);
        let c = g.add_arc(1, 3, 0, 10);
        let d = g.add_arc(2, 3, 4, 4);
        assert!(g.solve(0, 3));
        assert!((2..=3).contains(&g.flow(a)));
        assert_eq!(g.flow(d), 4);
        assert_eq!(g.flow(b), 4);
        assert_eq!(g.flow(a), g.flow(c));
    }

    #[test]
    fn infeasible_bounds_detected() {
        let mut g = BoundedFlow::new(3);
        g.add_arc(0, 1, 0, 2);
        g.add_arc(1, 2, 3, 3);
        assert!(!g.solve(0, 2));
    }
}
