//! Undirected simple graphs on dense vertex ids `0..n`.
//!
//! A [`Graph`] is immutable after construction. Every operation that
//! changes structure (vertex split, contraction, vertex removal) returns a
//! new graph. Neighbor lists are kept sorted so that iteration order, and
//! therefore every tie-break downstream, follows ascending vertex id.

use std::collections::BTreeSet;
use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Graph with `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from unordered pairs. Repeated pairs (in either
    /// orientation) collapse to one edge; self-loops and out-of-range ids are
    /// rejected.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            adj,
            edge_count: set.len(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && v < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_where(|_| true)
    }

    /// Components of the subgraph induced by the vertices accepted by `keep`.
    pub fn components_where(&self, keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] || !keep(s) {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] && keep(w) {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True for graphs with exactly one component. The empty graph is not
    /// connected.
    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components().len() == 1
    }

    /// Exact k-connectivity: `n > k` and no set of fewer than `k` vertices
    /// separates the graph. Every candidate cut is enumerated.
    pub fn is_k_connected(&self, k: usize) -> bool {
        let n = self.vertex_count();
        if k == 0 {
            return n > 0;
        }
        if n <= k {
            return false;
        }
        let mut removed = vec![false; n];
        (0..k).all(|size| !has_separator_of_size(self, size, 0, &mut removed))
    }

    /// Same vertex ids, with every edge incident to a vertex in `removed`
    /// deleted. Ids stay stable so embeddings found afterwards still refer to
    /// the original graph.
    pub fn without_vertices(&self, removed: &[usize]) -> Graph {
        let mut gone = vec![false; self.vertex_count()];
        for &v in removed {
            if v < gone.len() {
                gone[v] = true;
            }
        }
        let mut edge_count = 0;
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(u, list)| {
                if gone[u] {
                    return Vec::new();
                }
                let kept: Vec<usize> = list.iter().copied().filter(|&w| !gone[w]).collect();
                edge_count += kept.iter().filter(|&&w| w > u).count();
                kept
            })
            .collect();
        Graph { adj, edge_count }
    }

    /// Subgraph induced by `vertices` (sorted and deduplicated), relabelled
    /// to `0..len` in ascending order. Returns the graph and the map from new
    /// ids back to original ids.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); keep.len()];
        let mut edge_count = 0;
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX {
                    adj[i].push(j);
                    if j > i {
                        edge_count += 1;
                    }
                }
            }
        }
        (Graph { adj, edge_count }, keep)
    }

    /// Anti-contraction: splits `spec.target` into itself and a new vertex
    /// with id `n`.
    pub fn split_vertex(&self, spec: &VertexSplitSpec) -> Result<Graph> {
        spec.validate(self)?;
        let n = self.vertex_count();
        let fresh = n;
        let mut pairs: Vec<(usize, usize)> = self
            .edges()
            .filter(|&(u, v)| {
                let other = if u == spec.target {
                    v
                } else if v == spec.target {
                    u
                } else {
                    return true;
                };
                !spec.moved.contains(&other)
            })
            .collect();
        pairs.extend(spec.moved.iter().map(|&w| (w, fresh)));
        pairs.extend(spec.extra_edges.iter().copied());
        Graph::from_edge_list(n + 1, &pairs)
    }

    /// Contracts edge `keep`–`merge`: `merge` is deleted, its neighbors are
    /// reattached to `keep`, and ids above `merge` shift down by one.
    pub fn contract_edge(&self, keep: usize, merge: usize) -> Result<Graph> {
        let n = self.vertex_count();
        for w in [keep, merge] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if !self.has_edge(keep, merge) {
            return Err(Error::InvalidParameter(format!(
                "cannot contract non-edge {keep}-{merge}"
            )));
        }
        let relabel = |v: usize| {
            let v = if v == merge { keep } else { v };
            if v > merge {
                v - 1
            } else {
                v
            }
        };
        let pairs: Vec<(usize, usize)> = self
            .edges()
            .map(|(u, v)| (relabel(u), relabel(v)))
            .filter(|(u, v)| u != v)
            .collect();
        Graph::from_edge_list(n - 1, &pairs)
    }
}

fn has_separator_of_size(g: &Graph, size: usize, from: usize, removed: &mut [bool]) -> bool {
    if size == 0 {
        let comps = g.components_where(|v| !removed[v]);
        return comps.len() != 1;
    }
    let n = g.vertex_count();
    for v in from..n {
        removed[v] = true;
        let found = has_separator_of_size(g, size - 1, v + 1, removed);
        removed[v] = false;
        if found {
            return true;
        }
    }
    false
}

/// Describes one anti-contraction step. The new vertex receives id `n`
/// (the old vertex count) and may be referenced by that id in
/// `extra_edges`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSplitSpec {
    pub target: usize,
    pub kept: Vec<usize>,
    pub moved: Vec<usize>,
    pub extra_edges: Vec<(usize, usize)>,
}

impl VertexSplitSpec {
    /// Checks the neighbor partition, and that every extra edge is new, is
    /// incident to the target or the fresh vertex, and stays inside the
    /// closed neighborhood of the target. The last condition is what makes
    /// contracting target–fresh give back the original graph.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        if self.target >= n {
            return Err(Error::VertexOutOfRange {
                vertex: self.target,
                n,
            });
        }
        let fresh = n;
        let nbrs: BTreeSet<usize> = g.neighbors(self.target).iter().copied().collect();
        let kept: BTreeSet<usize> = self.kept.iter().copied().collect();
        let moved: BTreeSet<usize> = self.moved.iter().copied().collect();
        if kept.len() != self.kept.len() || moved.len() != self.moved.len() {
            return Err(Error::InvalidSplit("repeated neighbor in partition".into()));
        }
        if let Some(v) = kept.intersection(&moved).next() {
            return Err(Error::InvalidSplit(format!(
                "vertex {v} is both kept and moved"
            )));
        }
        let union: BTreeSet<usize> = kept.union(&moved).copied().collect();
        if union != nbrs {
            return Err(Error::InvalidSplit(format!(
                "kept ∪ moved = {union:?} but neighbors of {} are {nbrs:?}",
                self.target
            )));
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.extra_edges {
            let e = (u.min(v), u.max(v));
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if e.1 > fresh {
                return Err(Error::VertexOutOfRange {
                    vertex: e.1,
                    n: n + 1,
                });
            }
            if !seen.insert(e) {
                return Err(Error::InvalidSplit(format!("extra edge {u}-{v} repeated")));
            }
            if e.1 != fresh && g.has_edge(e.0, e.1) {
                return Err(Error::InvalidSplit(format!(
                    "extra edge {u}-{v} already present"
                )));
            }
            if e.1 == fresh && moved.contains(&e.0) {
                return Err(Error::InvalidSplit(format!(
                    "extra edge {u}-{v} duplicates a moved edge"
                )));
            }
            let other = if e.1 == fresh {
                e.0
            } else if e.0 == self.target {
                e.1
            } else if e.1 == self.target {
                e.0
            } else {
                return Err(Error::InvalidSplit(format!(
                    "extra edge {u}-{v} touches neither {} nor {fresh}",
                    self.target
                )));
            };
            if other != self.target && !nbrs.contains(&other) {
                return Err(Error::InvalidSplit(format!(
                    "extra edge {u}-{v} leaves the neighborhood of {}",
                    self.target
                )));
            }
        }
        let link = (self.target, fresh);
        if !seen.contains(&link) {
            return Err(Error::InvalidSplit(format!(
                "extra edges must include {}-{fresh}",
                self.target
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        let pairs: Vec<_> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        Graph::from_edge_list(4, &pairs).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &pairs).unwrap()
    }

    #[test]
    fn builds_path_and_complete_graph() {
        let p = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(p.edge_count(), 2);
        let k = k4();
        assert!((0..4).all(|v| k.degree(v) == 3));
    }

    #[test]
    fn rejects_loops_and_bad_ids() {
        assert_eq!(Graph::from_edge_list(2, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::from_edge_list(3, &[(5, 1)]),
            Err(Error::VertexOutOfRange { vertex: 5, n: 3 })
        );
    }

    #[test]
    fn deduplicates_parallel_pairs() {
        let g = Graph::from_edge_list(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn connectivity_of_small_graphs() {
        assert!(k4().is_k_connected(3));
        assert!(!k4().is_k_connected(4));
        assert!(cycle(6).is_k_connected(2));
        assert!(!cycle(6).is_k_connected(3));
        let path = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.is_k_connected(1));
        assert!(!path.is_k_connected(2));
        assert!(!Graph::empty(2).is_k_connected(1));
    }

    #[test]
    fn k4_split_matches_first_anti_contraction() {
        // v1..v4 -> 0..3; v'1 becomes vertex 4.
        let spec = VertexSplitSpec {
            target: 0,
            kept: vec![2, 3],
            moved: vec![1],
            extra_edges: vec![(0, 4), (4, 2)],
        };
        let g1 = k4().split_vertex(&spec).unwrap();
        assert_eq!(g1.vertex_count(), 5);
        assert_eq!(g1.degree(0), 3);
        assert_eq!(g1.degree(4), 3);
        assert_eq!(g1.contract_edge(0, 4).unwrap(), k4());
    }

    #[test]
    fn split_rejects_bad_partitions() {
        let overlap = VertexSplitSpec {
            target: 0,
            kept: vec![1, 2, 3],
            moved: vec![1],
            extra_edges: vec![(0, 4)],
        };
        assert!(matches!(
            k4().split_vertex(&overlap),
            Err(Error::InvalidSplit(_))
        ));
        let missing = VertexSplitSpec {
            target: 0,
            kept: vec![2],
            moved: vec![1],
            extra_edges: vec![(0, 4)],
        };
        assert!(k4().split_vertex(&missing).is_err());
        let no_link = VertexSplitSpec {
            target: 0,
            kept: vec![2, 3],
            moved: vec![1],
            extra_edges: vec![(4, 2)],
        };
        assert!(k4().split_vertex(&no_link).is_err());
    }

    #[test]
    fn without_vertices_keeps_ids() {
        let g = cycle(5).without_vertices(&[0]);
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(0), 0);
    }

    #[test]
    fn induced_relabels() {
        let (h, map) = cycle(6).induced(&[4, 0, 5]);
        assert_eq!(map, vec![0, 4, 5]);
        assert_eq!(h.edge_list(), vec![(0, 2), (1, 2)]);
    }
}
