//! Seeded random graphs for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::G3_EDGES;
use crate::graph::Graph;

pub const DEFAULT_SEED: u64 = 0x7e3a_2013_0612;

/// Connected graph on `n` vertices: a random recursive tree plus up to
/// `extra_edges` further distinct edges.
pub fn random_connected_graph(n: usize, extra_edges: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(n + extra_edges);
    for v in 1..n {
        pairs.push((rng.random_range(0..v), v));
    }
    let max_edges = n * n.saturating_sub(1) / 2;
    let target = (n.saturating_sub(1) + extra_edges).min(max_edges);
    let mut g = Graph::from_edge_list(n, &pairs).expect("tree edges are valid");
    while g.edge_count() < target {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && !g.has_edge(u, v) {
            pairs.push((u, v));
            g = Graph::from_edge_list(n, &pairs).expect("random edges are valid");
        }
    }
    g
}

/// `copies` disjoint copies of `G₃` on shuffled ids, plus `filler` extra
/// vertices, joined into a connected graph by `extra_edges` random edges
/// on top of a random spanning structure.
pub fn planted_g3_graph(copies: usize, filler: usize, extra_edges: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 7 * copies + filler;
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut rng);
    let mut pairs = Vec::new();
    for c in 0..copies {
        let block = &ids[7 * c..7 * c + 7];
        pairs.extend(G3_EDGES.iter().map(|&(u, v)| (block[u], block[v])));
    }
    // link every vertex to an earlier one in shuffled order to guarantee
    // connectivity across the planted pieces
    for i in 1..n {
        if i % 7 == 0 || i >= 7 * copies {
            let j = rng.random_range(0..i);
            pairs.push((ids[j], ids[i]));
        }
    }
    let mut g = Graph::from_edge_list(n, &pairs).expect("planted edges are valid");
    let target = g.edge_count() + extra_edges;
    while g.edge_count() < target {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && !g.has_edge(u, v) {
            pairs.push((u, v));
            g = Graph::from_edge_list(n, &pairs).expect("random edges are valid");
        }
    }
    g
}
