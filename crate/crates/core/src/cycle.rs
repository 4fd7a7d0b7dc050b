//! Longest-cycle search by exhaustive backtracking.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Graphs up to this order are always searched to completion.
pub const EXACT_ORDER_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Search-tree nodes allowed for graphs above [`EXACT_ORDER_LIMIT`].
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    /// Cycle vertices in order; the last vertex is adjacent to the first.
    pub vertices: Vec<usize>,
    pub length: usize,
    /// False when the search stopped on its budget; the cycle is then only
    /// the longest one seen.
    pub exact: bool,
}

impl CycleWitness {
    pub fn is_cycle_in(&self, g: &Graph) -> bool {
        let k = self.vertices.len();
        if k < 3 || k != self.length {
            return false;
        }
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == k
            && (0..k).all(|i| g.has_edge(self.vertices[i], self.vertices[(i + 1) % k]))
    }
}

/// Longest cycle of `g`, or `None` for forests.
///
/// Cycles are found rooted at their smallest vertex, with roots tried in
/// ascending order, so the witness is deterministic.
pub fn longest_cycle(g: &Graph, budget: SearchBudget) -> Option<CycleWitness> {
    let n = g.vertex_count();
    if g.edge_count() + g.components().len() <= n {
        return None;
    }
    let limit = if n <= EXACT_ORDER_LIMIT {
        u64::MAX
    } else {
        budget.max_nodes
    };
    let mut search = Search {
        g,
        root: 0,
        path: Vec::with_capacity(n),
        on_path: vec![false; n],
        best: Vec::new(),
        nodes: 0,
        limit,
        exhausted: false,
        mark: vec![0; n],
        stamp: 0,
        queue: Vec::with_capacity(n),
    };
    for root in 0..n {
        if n - root <= search.best.len() || search.exhausted {
            break;
        }
        search.root = root;
        search.path.push(root);
        search.on_path[root] = true;
        search.extend();
        search.on_path[root] = false;
        search.path.pop();
    }
    let exact = !search.exhausted;
    let vertices = search.best;
    (!vertices.is_empty()).then_some(CycleWitness {
        length: vertices.len(),
        vertices,
        exact,
    })
}

struct Search<'a> {
    g: &'a Graph,
    root: usize,
    path: Vec<usize>,
    on_path: Vec<bool>,
    best: Vec<usize>,
    nodes: u64,
    limit: u64,
    exhausted: bool,
    mark: Vec<u32>,
    stamp: u32,
    queue: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self) {
        self.nodes += 1;
        if self.nodes > self.limit {
            self.exhausted = true;
            return;
        }
        let last = *self.path.last().expect("path starts at the root");
        if self.path.len() >= 3
            && self.g.has_edge(last, self.root)
            && self.path.len() > self.best.len()
        {
            self.best = self.path.clone();
        }
        if self.path.len() + self.reachable_from(last) <= self.best.len() {
            return;
        }
        for i in 0..self.g.degree(last) {
            let w = self.g.neighbors(last)[i];
            if w <= self.root || self.on_path[w] {
                continue;
            }
            self.path.push(w);
            self.on_path[w] = true;
            self.extend();
            self.on_path[w] = false;
            self.path.pop();
            if self.exhausted || self.best.len() == self.g.vertex_count() - self.root {
                return;
            }
        }
    }

    /// Vertices above the root still reachable from `from` off the path.
    fn reachable_from(&mut self, from: usize) -> usize {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.stamp = 1;
        }
        self.queue.clear();
        self.queue.push(from);
        let mut count = 0;
        while let Some(u) = self.queue.pop() {
            for &w in self.g.neighbors(u) {
                if w > self.root && !self.on_path[w] && self.mark[w] != self.stamp {
                    self.mark[w] = self.stamp;
                    count += 1;
                    self.queue.push(w);
                }
            }
        }
        count
    }
}
