//! Search for cycles whose maximum colour has a given parity.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// Finite graph with coloured nodes and labelled edges.
pub(crate) struct ColouredGraph {
    pub colour: Vec<u8>,
    pub succ: Vec<Vec<(u32, usize)>>,
}

/// A cycle as `(node, label of the edge leaving it)`; the last edge returns
/// to the first node.
pub(crate) type Cycle = Vec<(usize, u32)>;

impl ColouredGraph {
    /// Some cycle whose largest colour is congruent to `parity` mod 2.
    ///
    /// For each candidate colour `d`, looks for a non-trivial strongly
    /// connected component of the subgraph on colours `<= d` that contains
    /// a node of colour `d`.
    pub fn cycle_with_max_parity(&self, parity: u8) -> Option<Cycle> {
        let top = self.colour.iter().copied().max()?;
        let mut d = parity % 2;
        while d <= top {
            if let Some(c) = self.cycle_with_max(d) {
                return Some(c);
            }
            d += 2;
        }
        None
    }

    fn cycle_with_max(&self, d: u8) -> Option<Cycle> {
        let n = self.colour.len();
        let keep = |v: usize| self.colour[v] <= d;
        let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
        for _ in 0..n {
            graph.add_node(());
        }
        for (v, out) in self.succ.iter().enumerate() {
            if !keep(v) {
                continue;
            }
            for &(_, w) in out {
                if keep(w) {
                    graph.add_edge(NodeIndex::new(v), NodeIndex::new(w), ());
                }
            }
        }
        let mut component = vec![usize::MAX; n];
        for (id, scc) in tarjan_scc(&graph).into_iter().enumerate() {
            for v in &scc {
                component[v.index()] = id;
            }
            let Some(start) = scc.iter().map(|v| v.index()).find(|&v| self.colour[v] == d) else {
                continue;
            };
            if let Some(cycle) = self.cycle_through(start, |w| component[w] == id) {
                return Some(cycle);
            }
        }
        None
    }

    /// Shortest cycle through `start` inside the node set `inside`.
    fn cycle_through(&self, start: usize, inside: impl Fn(usize) -> bool) -> Option<Cycle> {
        let mut parent: Vec<Option<(usize, u32)>> = vec![None; self.colour.len()];
        let mut queue = VecDeque::new();
        for &(label, w) in &self.succ[start] {
            if w == start {
                return Some(vec![(start, label)]);
            }
            if inside(w) && parent[w].is_none() {
                parent[w] = Some((start, label));
                queue.push_back(w);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &(label, w) in &self.succ[u] {
                if w == start {
                    let mut cycle = vec![(u, label)];
                    let mut v = u;
                    while v != start {
                        let (p, l) = parent[v].expect("visited nodes have parents");
                        cycle.push((p, l));
                        v = p;
                    }
                    cycle.reverse();
                    return Some(cycle);
                }
                if inside(w) && parent[w].is_none() {
                    parent[w] = Some((u, label));
                    queue.push_back(w);
                }
            }
        }
        None
    }
}
