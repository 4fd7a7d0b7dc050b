//! Exact clique-minor testing for small cliques.
//!
//! A graph has a `K^t` minor iff it has `t` disjoint, connected, pairwise
//! adjacent vertex sets (branch sets). The search first applies reductions
//! that provably keep minor membership, then branches over the assignment
//! of every remaining vertex to one of the branch sets or to "deleted".

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_CLIQUE_MINOR: usize = 6;

/// True iff `g` has a `K^t` minor. Supports `t <= 6`.
pub fn has_clique_minor(g: &Graph, t: usize) -> Result<bool> {
    if t > MAX_CLIQUE_MINOR {
        return Err(Error::Unsupported(format!(
            "clique minors above K^{MAX_CLIQUE_MINOR} (asked for K^{t})"
        )));
    }
    match t {
        0 => return Ok(true),
        1 => return Ok(g.vertex_count() >= 1),
        2 => return Ok(g.edge_count() >= 1),
        3 => return Ok(has_cycle(g)),
        _ => {}
    }
    let reduced = reduce(g, t);
    if reduced.vertex_count() < t {
        return Ok(false);
    }
    if has_clique_subgraph(&reduced, t) {
        return Ok(true);
    }
    let mut search = BranchSearch {
        g: &reduced,
        t,
        assign: vec![NONE; reduced.vertex_count()],
    };
    Ok(search.run(0, 0))
}

fn has_cycle(g: &Graph) -> bool {
    // a forest has exactly n - c edges
    g.edge_count() + g.components().len() > g.vertex_count()
}

/// Removes vertices of degree < 2 and suppresses degree-2 vertices. Both are
/// safe for `t >= 4`: a vertex of degree <= 2 can never be a singleton branch
/// set, and folding it into a neighbor's set preserves every adjacency it
/// contributes.
fn reduce(g: &Graph, t: usize) -> Graph {
    debug_assert!(t >= 4);
    let mut current = g.clone();
    loop {
        let n = current.vertex_count();
        let Some(v) = (0..n).find(|&v| current.degree(v) <= 2) else {
            return current;
        };
        current = if current.degree(v) == 2 {
            let u = current.neighbors(v)[0];
            current
                .contract_edge(u, v)
                .expect("contracting an existing edge")
        } else {
            let keep: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            current.induced(&keep).0
        };
    }
}

fn has_clique_subgraph(g: &Graph, t: usize) -> bool {
    fn extend(g: &Graph, chosen: &mut Vec<usize>, from: usize, t: usize) -> bool {
        if chosen.len() == t {
            return true;
        }
        for v in from..g.vertex_count() {
            if g.degree(v) + 1 < t || !chosen.iter().all(|&c| g.has_edge(c, v)) {
                continue;
            }
            chosen.push(v);
            if extend(g, chosen, v + 1, t) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    extend(g, &mut Vec::with_capacity(t), 0, t)
}

const NONE: usize = usize::MAX;
const DELETED: usize = usize::MAX - 1;

struct BranchSearch<'a> {
    g: &'a Graph,
    t: usize,
    assign: Vec<usize>,
}

impl BranchSearch<'_> {
    fn run(&mut self, v: usize, opened: usize) -> bool {
        let n = self.g.vertex_count();
        if opened + (n - v) < self.t {
            return false;
        }
        if v == n {
            return self.is_model();
        }
        // symmetry: a vertex may open at most the next unused branch set
        let limit = (opened + 1).min(self.t);
        for set in 0..limit {
            self.assign[v] = set;
            let next_open = opened.max(set + 1);
            if self.run(v + 1, next_open) {
                return true;
            }
        }
        self.assign[v] = DELETED;
        let found = self.run(v + 1, opened);
        self.assign[v] = NONE;
        found
    }

    fn is_model(&self) -> bool {
        let t = self.t;
        let g = self.g;
        let mut adjacent = vec![vec![false; t]; t];
        for (u, v) in g.edges() {
            let (a, b) = (self.assign[u], self.assign[v]);
            if a < t && b < t && a != b {
                adjacent[a][b] = true;
                adjacent[b][a] = true;
            }
        }
        if !(0..t).all(|a| (a + 1..t).all(|b| adjacent[a][b])) {
            return false;
        }
        (0..t).all(|set| {
            let members: Vec<usize> = (0..g.vertex_count())
                .filter(|&v| self.assign[v] == set)
                .collect();
            !members.is_empty() && g.components_where(|v| self.assign[v] == set).len() == 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edge_list(n, &pairs).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &pairs).unwrap()
    }

    #[test]
    fn cycles_have_no_k4_minor() {
        assert!(!has_clique_minor(&cycle(9), 4).unwrap());
        assert!(has_clique_minor(&cycle(9), 3).unwrap());
    }

    #[test]
    fn complete_graphs() {
        assert!(has_clique_minor(&complete(5), 4).unwrap());
        assert!(has_clique_minor(&complete(5), 5).unwrap());
        assert!(!has_clique_minor(&complete(5), 6).unwrap());
    }

    #[test]
    fn petersen_has_k5_but_not_k6_minor() {
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let pairs: Vec<_> = outer.into_iter().chain(inner).chain(spokes).collect();
        let petersen = Graph::from_edge_list(10, &pairs).unwrap();
        assert!(!has_clique_subgraph(&petersen, 4));
        assert!(has_clique_minor(&petersen, 5).unwrap());
        assert!(!has_clique_minor(&petersen, 6).unwrap());
    }

    #[test]
    fn subdivided_k4_keeps_minor() {
        // K4 with every edge subdivided once
        let base = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let pairs: Vec<_> = base
            .iter()
            .enumerate()
            .flat_map(|(i, &(u, v))| [(u, 4 + i), (4 + i, v)])
            .collect();
        let g = Graph::from_edge_list(10, &pairs).unwrap();
        assert!(has_clique_minor(&g, 4).unwrap());
        assert!(!has_clique_minor(&g, 5).unwrap());
    }

    #[test]
    fn too_large_clique_is_unsupported() {
        assert!(matches!(
            has_clique_minor(&complete(3), 7),
            Err(Error::Unsupported(_))
        ));
    }
}
