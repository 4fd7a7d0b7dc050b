//! Block decompositions and the articulation-point reference oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A maximal run of non-block vertices, with the blocks it touches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSegment {
    /// Indices into [`BlockDecomposition::blocks`], ascending.
    pub between: Vec<usize>,
    /// Vertices in walk order when the segment is a path.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BlockDecomposition {
    /// Sorted vertex sets, ordered by smallest member.
    pub blocks: Vec<Vec<usize>>,
    pub paths: Vec<PathSegment>,
}

impl BlockDecomposition {
    /// Builds the decomposition from block vertex sets and the set of vertices
    /// classified as lying on inter-block paths. Vertices appearing in a block
    /// are dropped from the path set.
    pub fn assemble(g: &Graph, blocks: Vec<Vec<usize>>, path_vertices: &[usize]) -> Self {
        let n = g.vertex_count();
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .filter(|b| !b.is_empty())
            .collect();
        blocks.sort();
        let mut block_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                block_of[v].push(i);
            }
        }
        let mut on_path = vec![false; n];
        for &v in path_vertices {
            if block_of[v].is_empty() {
                on_path[v] = true;
            }
        }
        let paths = g
            .components_where(|v| on_path[v])
            .into_iter()
            .map(|comp| {
                let mut between: Vec<usize> = comp
                    .iter()
                    .flat_map(|&v| g.neighbors(v).iter())
                    .flat_map(|&w| block_of[w].iter().copied())
                    .collect();
                between.sort_unstable();
                between.dedup();
                let vertices = walk_order(g, &comp, &on_path, &block_of);
                PathSegment { between, vertices }
            })
            .collect();
        BlockDecomposition { blocks, paths }
    }

    /// Canonical form for comparisons: blocks that share a vertex are merged,
    /// and path segments are rebuilt against the merged blocks.
    pub fn normalized(&self, g: &Graph) -> Self {
        let merged = merge_overlapping(self.blocks.clone(), g.vertex_count());
        let path_vertices: Vec<usize> = self
            .paths
            .iter()
            .flat_map(|p| p.vertices.iter().copied())
            .collect();
        Self::assemble(g, merged, &path_vertices)
    }

    pub fn block_vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn path_vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self
            .paths
            .iter()
            .flat_map(|p| p.vertices.iter().copied())
            .collect();
        all.sort_unstable();
        all
    }
}

/// Union-find merge of vertex sets that share a member.
pub(crate) fn merge_overlapping(sets: Vec<Vec<usize>>, n: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..sets.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    let mut owner = vec![usize::MAX; n];
    for (i, set) in sets.iter().enumerate() {
        for &v in set {
            if owner[v] == usize::MAX {
                owner[v] = i;
            } else {
                let (a, b) = (find(&mut parent, owner[v]), find(&mut parent, i));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); sets.len()];
    for (i, set) in sets.into_iter().enumerate() {
        let r = find(&mut parent, i);
        groups[r].extend(set);
    }
    let mut out: Vec<Vec<usize>> = groups
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|mut g| {
            g.sort_unstable();
            g.dedup();
            g
        })
        .collect();
    out.sort();
    out
}

/// Orders a segment as a walk. Starts at an end (degree <= 1 inside the
/// segment), preferring one that touches the lowest-numbered block, then the
/// smaller id; for non-path segments this degrades to DFS preorder.
fn walk_order(g: &Graph, comp: &[usize], on_path: &[bool], block_of: &[Vec<usize>]) -> Vec<usize> {
    let inner_degree = |v: usize| g.neighbors(v).iter().filter(|&&w| on_path[w]).count();
    let touch = |v: usize| {
        g.neighbors(v)
            .iter()
            .flat_map(|&w| block_of[w].iter().copied())
            .min()
            .unwrap_or(usize::MAX)
    };
    let start = comp
        .iter()
        .copied()
        .min_by_key(|&v| (inner_degree(v).max(1), touch(v), v))
        .expect("segment is nonempty");
    let mut order = Vec::with_capacity(comp.len());
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        order.push(v);
        for &w in g.neighbors(v).iter().rev() {
            if on_path[w] && !seen[w] {
                stack.push(w);
            }
        }
    }
    order
}

/// Classical biconnected components, as vertex sets. Bridges appear as
/// two-vertex components; isolated vertices are omitted.
pub fn biconnected_components(g: &Graph) -> Vec<Vec<usize>> {
    struct Tarjan<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<usize>>,
    }
    impl Tarjan<'_> {
        fn visit(&mut self, u: usize, parent: usize) {
            self.time += 1;
            self.disc[u] = self.time;
            self.low[u] = self.time;
            for &w in self.g.neighbors(u) {
                if self.disc[w] == 0 {
                    self.stack.push((u, w));
                    self.visit(w, u);
                    self.low[u] = self.low[u].min(self.low[w]);
                    if self.low[w] >= self.disc[u] {
                        let mut comp = Vec::new();
                        while let Some((a, b)) = self.stack.pop() {
                            comp.push(a);
                            comp.push(b);
                            if (a, b) == (u, w) {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comp.dedup();
                        self.out.push(comp);
                    }
                } else if w != parent && self.disc[w] < self.disc[u] {
                    self.stack.push((u, w));
                    self.low[u] = self.low[u].min(self.disc[w]);
                }
            }
        }
    }
    let n = g.vertex_count();
    let mut t = Tarjan {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for s in 0..n {
        if t.disc[s] == 0 {
            t.visit(s, usize::MAX);
        }
    }
    let mut out = t.out;
    out.sort();
    out
}

/// Reference decomposition: biconnected components with at least three
/// vertices are blocks (adjacent blocks share their cut vertex); every other
/// vertex lies on an inter-block path segment.
pub fn reference_blocks(g: &Graph) -> Result<BlockDecomposition> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let blocks: Vec<Vec<usize>> = biconnected_components(g)
        .into_iter()
        .filter(|c| c.len() >= 3)
        .collect();
    let mut in_block = vec![false; g.vertex_count()];
    for &v in blocks.iter().flatten() {
        in_block[v] = true;
    }
    let rest: Vec<usize> = (0..g.vertex_count()).filter(|&v| !in_block[v]).collect();
    Ok(BlockDecomposition::assemble(g, blocks, &rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{barbell, cycle_family};

    #[test]
    fn barbell_has_two_blocks_and_one_path() {
        let g = barbell(4).unwrap();
        let d = reference_blocks(&g).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1, 2], vec![6, 7, 8]]);
        assert_eq!(
            d.paths,
            vec![PathSegment {
                between: vec![0, 1],
                vertices: vec![3, 4, 5],
            }]
        );
    }

    #[test]
    fn cycle_is_one_block() {
        let d = reference_blocks(&cycle_family(2).unwrap()).unwrap();
        assert_eq!(d.blocks, vec![(0..6).collect::<Vec<_>>()]);
        assert!(d.paths.is_empty());
    }

    #[test]
    fn path_graph_is_one_segment() {
        let g = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let d = reference_blocks(&g).unwrap();
        assert!(d.blocks.is_empty());
        assert_eq!(d.paths.len(), 1);
        assert_eq!(d.paths[0].vertices, vec![0, 1, 2, 3, 4, 5]);
        assert!(d.paths[0].between.is_empty());
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(reference_blocks(&g), Err(Error::Disconnected));
    }

    #[test]
    fn bowtie_blocks_share_cut_vertex_until_normalized() {
        let g =
            Graph::from_edge_list(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let d = reference_blocks(&g).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(d.normalized(&g).blocks, vec![vec![0, 1, 2, 3, 4]]);
    }
}
