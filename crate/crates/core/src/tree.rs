//! Perfect binary trees `T_k` and enumeration of their copies in a host graph.
//!
//! Positions follow level order: position `p` has children `2p + 1` and
//! `2p + 2`, the root is position 0, and leaves sit at level `k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_PATTERN_K: usize = 4;
pub const MAX_ENUMERATION_K: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreePattern {
    k: usize,
}

impl TreePattern {
    pub fn new(k: usize) -> Result<Self> {
        if k > MAX_PATTERN_K {
            return Err(Error::Unsupported(format!(
                "perfect binary trees above T_{MAX_PATTERN_K} (asked for T_{k})"
            )));
        }
        Ok(TreePattern { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        (1 << (self.k + 1)) - 1
    }

    pub fn levels(&self) -> usize {
        self.k + 1
    }

    /// Number of positions with children.
    pub fn internal_count(&self) -> usize {
        (1 << self.k) - 1
    }

    /// Tree edges as `(parent, child)` position pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> {
        let internal = self.internal_count();
        (0..internal).flat_map(|p| [(p, 2 * p + 1), (p, 2 * p + 2)])
    }

    pub fn graph(&self) -> Graph {
        let pairs: Vec<_> = self.edges().collect();
        Graph::from_edge_list(self.order(), &pairs).expect("tree edges are valid")
    }
}

/// The perfect binary tree `T_k` as a graph with level-order ids.
pub fn pattern_graph(k: usize) -> Result<Graph> {
    Ok(TreePattern::new(k)?.graph())
}

/// One subgraph of a host isomorphic to `T_k`.
///
/// The image list is kept in canonical form: at every internal position the
/// child with the smaller host id comes first. Child swaps generate every
/// automorphism of a perfect binary tree, so two embeddings are equal iff
/// they realize the same subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreeEmbedding {
    k: usize,
    image: Vec<usize>,
}

impl TreeEmbedding {
    /// Canonicalizes `image`, a level-order assignment of host vertices.
    pub fn new(k: usize, image: Vec<usize>) -> Result<Self> {
        let pattern = TreePattern::new(k)?;
        if image.len() != pattern.order() {
            return Err(Error::InvalidParameter(format!(
                "T_{k} needs {} image vertices, got {}",
                pattern.order(),
                image.len()
            )));
        }
        Ok(TreeEmbedding {
            k,
            image: canonicalize(pattern, &image),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn pattern(&self) -> TreePattern {
        TreePattern { k: self.k }
    }

    pub fn root(&self) -> usize {
        self.image[0]
    }

    /// Host vertices in canonical level order.
    pub fn image_vertices(&self) -> &[usize] {
        &self.image
    }

    /// Host vertices at tree level `level` (0 is the root).
    pub fn level(&self, level: usize) -> &[usize] {
        let start = (1 << level) - 1;
        &self.image[start..2 * start + 1]
    }

    /// Host edges realizing the tree edges, each as `(min, max)`, sorted.
    pub fn image_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = self
            .pattern()
            .edges()
            .map(|(p, c)| {
                let (a, b) = (self.image[p], self.image[c]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn contains(&self, v: usize) -> bool {
        self.image.contains(&v)
    }

    pub fn shares_vertex_with(&self, other: &TreeEmbedding) -> Option<usize> {
        self.image.iter().copied().find(|&v| other.contains(v))
    }
}

fn canonicalize(pattern: TreePattern, image: &[usize]) -> Vec<usize> {
    // Breadth-first walk that visits the smaller child first at every
    // internal position; visit order is the canonical level order.
    let order = pattern.order();
    let mut canon = Vec::with_capacity(order);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(p) = queue.pop_front() {
        canon.push(image[p]);
        let (l, r) = (2 * p + 1, 2 * p + 2);
        if l < order {
            let (first, second) = if image[l] <= image[r] { (l, r) } else { (r, l) };
            queue.push_back(first);
            queue.push_back(second);
        }
    }
    canon
}

/// True iff `e` is a well-formed, canonical copy of `T_k` inside `g`.
pub fn is_valid_embedding(g: &Graph, e: &TreeEmbedding) -> bool {
    let Ok(pattern) = TreePattern::new(e.k) else {
        return false;
    };
    let n = g.vertex_count();
    if e.image.len() != pattern.order() || e.image.iter().any(|&v| v >= n) {
        return false;
    }
    let mut sorted = e.image.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    if canonicalize(pattern, &e.image) != e.image {
        return false;
    }
    pattern
        .edges()
        .all(|(p, c)| g.has_edge(e.image[p], e.image[c]))
}

/// All copies of `T_k` in `g`, sorted by canonical image.
pub fn enumerate_embeddings(g: &Graph, k: usize) -> Result<Vec<TreeEmbedding>> {
    enumerate_embeddings_bounded(g, k, u64::MAX)
}

/// As [`enumerate_embeddings`], failing once more than `limit` copies exist.
pub fn enumerate_embeddings_bounded(g: &Graph, k: usize, limit: u64) -> Result<Vec<TreeEmbedding>> {
    let mut search = Enumerator::new(g, k, Stop::FailAbove(limit))?;
    search.run()?;
    let mut out: Vec<TreeEmbedding> = search
        .out
        .into_iter()
        .map(|image| TreeEmbedding { k, image })
        .collect();
    out.sort();
    Ok(out)
}

/// The lexicographically smallest copy of `T_k` in `g`, if any.
pub fn first_embedding(g: &Graph, k: usize) -> Result<Option<TreeEmbedding>> {
    let mut search = Enumerator::new(g, k, Stop::First)?;
    search.run()?;
    Ok(search
        .out
        .into_iter()
        .next()
        .map(|image| TreeEmbedding { k, image }))
}

#[derive(Clone, Copy)]
enum Stop {
    FailAbove(u64),
    First,
}

struct Enumerator<'a> {
    g: &'a Graph,
    order: usize,
    internal: usize,
    image: Vec<usize>,
    used: Vec<bool>,
    out: Vec<Vec<usize>>,
    stop: Stop,
}

impl<'a> Enumerator<'a> {
    fn new(g: &'a Graph, k: usize, stop: Stop) -> Result<Self> {
        if !(1..=MAX_ENUMERATION_K).contains(&k) {
            return Err(Error::Unsupported(format!(
                "enumeration is implemented for T_1..T_{MAX_ENUMERATION_K} (asked for T_{k})"
            )));
        }
        let pattern = TreePattern::new(k)?;
        Ok(Enumerator {
            g,
            order: pattern.order(),
            internal: pattern.internal_count(),
            image: vec![usize::MAX; pattern.order()],
            used: vec![false; g.vertex_count()],
            out: Vec::new(),
            stop,
        })
    }

    fn run(&mut self) -> Result<()> {
        if self.g.vertex_count() < self.order {
            return Ok(());
        }
        for root in 0..self.g.vertex_count() {
            if self.g.degree(root) < 2 {
                continue;
            }
            self.image[0] = root;
            self.used[root] = true;
            let done = self.expand(0)?;
            self.used[root] = false;
            if done {
                break;
            }
        }
        Ok(())
    }

    /// Chooses an ascending child pair for position `p`, then moves on to
    /// `p + 1`. Positions are filled in level order, so ascending choices
    /// yield canonical images in lexicographic order. Returns true once the
    /// search should stop.
    fn expand(&mut self, p: usize) -> Result<bool> {
        if p == self.internal {
            match self.stop {
                Stop::FailAbove(limit) if self.out.len() as u64 >= limit => {
                    return Err(Error::BudgetExceeded {
                        budget: "max_embeddings",
                        limit,
                    });
                }
                Stop::FailAbove(_) => {
                    self.out.push(self.image.clone());
                    return Ok(false);
                }
                Stop::First => {
                    self.out.push(self.image.clone());
                    return Ok(true);
                }
            }
        }
        let host = self.image[p];
        // a child that is itself internal needs two children plus its parent
        let min_child_degree = if 2 * p + 1 < self.internal { 3 } else { 1 };
        let g = self.g;
        let nbrs = g.neighbors(host);
        for (i, &a) in nbrs.iter().enumerate() {
            if self.used[a] || g.degree(a) < min_child_degree {
                continue;
            }
            self.used[a] = true;
            for &b in &nbrs[i + 1..] {
                if self.used[b] || g.degree(b) < min_child_degree {
                    continue;
                }
                self.used[b] = true;
                self.image[2 * p + 1] = a;
                self.image[2 * p + 2] = b;
                let done = self.expand(p + 1)?;
                self.used[b] = false;
                if done {
                    self.used[a] = false;
                    return Ok(true);
                }
            }
            self.used[a] = false;
        }
        Ok(false)
    }
}
