//! Packing heuristics for `T_1` and `T_2` built on block detection.
//!
//! `T_1` is packed along the longest cycle of each block, then greedily along
//! whatever is left. `T_2` is packed one copy per vertex-disjoint `G_3` unit.

use serde::{Deserialize, Serialize};

use crate::blocks::biconnected_components;
use crate::constructions::{G3_EDGES, G3_T2_IMAGE};
pub use crate::cycle::{longest_cycle, CycleWitness, SearchBudget};
use crate::graph::Graph;
use crate::oracle::PackingSolution;
use crate::sim::{run_block_detection, SimOptions};
use crate::tree::TreeEmbedding;

/// Where block vertex sets come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockSource {
    /// The routing-table simulation.
    #[default]
    Simulated,
    /// Classical biconnected components with at least three vertices.
    Reference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeuristicOptions {
    pub blocks: BlockSource,
    pub cycle_budget: SearchBudget,
    /// Search nodes for the fallback `G_3` search.
    pub g3_search_nodes: u64,
}

impl Default for HeuristicOptions {
    fn default() -> Self {
        HeuristicOptions {
            blocks: BlockSource::Simulated,
            cycle_budget: SearchBudget::default(),
            g3_search_nodes: 2_000_000,
        }
    }
}

/// Block vertex sets of `g`, component by component, in host ids.
pub fn detect_blocks(g: &Graph, source: BlockSource) -> Vec<Vec<usize>> {
    let mut blocks = match source {
        BlockSource::Reference => biconnected_components(g)
            .into_iter()
            .filter(|c| c.len() >= 3)
            .collect(),
        BlockSource::Simulated => {
            let mut out = Vec::new();
            for comp in g.components().into_iter().filter(|c| c.len() >= 3) {
                let (sub, map) = g.induced(&comp);
                let d = run_block_detection(&sub, SimOptions::default())
                    .expect("components are connected with at least two vertices");
                out.extend(
                    d.decomposition
                        .blocks
                        .into_iter()
                        .map(|b| b.into_iter().map(|v| map[v]).collect::<Vec<_>>()),
                );
            }
            out
        }
    };
    blocks.sort();
    blocks
}

fn t1(center: usize, a: usize, b: usize) -> TreeEmbedding {
    TreeEmbedding::new(1, vec![center, a, b]).expect("three image vertices")
}

pub fn pack_t1(g: &Graph) -> PackingSolution {
    pack_t1_with(g, &HeuristicOptions::default())
}

pub fn pack_t1_with(g: &Graph, options: &HeuristicOptions) -> PackingSolution {
    let n = g.vertex_count();
    let mut used = vec![false; n];
    let mut embeddings = Vec::new();
    for block in detect_blocks(g, options.blocks) {
        let free: Vec<usize> = block.into_iter().filter(|&v| !used[v]).collect();
        let (sub, map) = g.induced(&free);
        let Some(cycle) = longest_cycle(&sub, options.cycle_budget) else {
            continue;
        };
        for triple in cycle.vertices.chunks_exact(3) {
            let [a, c, b] = [map[triple[0]], map[triple[1]], map[triple[2]]];
            embeddings.push(t1(c, a, b));
            used[a] = true;
            used[b] = true;
            used[c] = true;
        }
    }
    pack_residual_t1(g, &mut used, &mut embeddings);
    PackingSolution { k: 1, embeddings }
}

/// Greedy consecutive triples on the unused part of `g`. Each walk starts
/// from the unused vertex of fewest unused neighbors, preferring one next
/// to a used vertex, then the smaller id.
fn pack_residual_t1(g: &Graph, used: &mut [bool], out: &mut Vec<TreeEmbedding>) {
    let n = g.vertex_count();
    let mut dead = vec![false; n];
    let free_degree =
        |used: &[bool], v: usize| g.neighbors(v).iter().filter(|&&w| !used[w]).count();
    loop {
        let start = (0..n).filter(|&v| !used[v] && !dead[v]).min_by_key(|&v| {
            let attached = g.neighbors(v).iter().any(|&w| used[w]);
            (free_degree(used, v), !attached, v)
        });
        let Some(s) = start else { break };
        let next = |used: &[bool], from: usize, skip: usize| {
            g.neighbors(from)
                .iter()
                .copied()
                .filter(|&w| !used[w] && w != skip)
                .min_by_key(|&w| (free_degree(used, w), w))
        };
        let Some(w) = next(used, s, s) else {
            dead[s] = true;
            continue;
        };
        let triple = match next(used, w, s) {
            Some(x) => Some((w, s, x)),
            None => next(used, s, w).map(|x| (s, w, x)),
        };
        match triple {
            Some((c, a, b)) => {
                out.push(t1(c, a, b));
                used[a] = true;
                used[b] = true;
                used[c] = true;
            }
            None => dead[s] = true,
        }
    }
}

/// A copy of canonical `G_3` in the host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct G3Unit {
    /// `phi[i]` is the host vertex playing canonical vertex `i`.
    pub phi: [usize; 7],
    /// Sorted image.
    pub vertices: Vec<usize>,
}

impl G3Unit {
    fn new(phi: [usize; 7]) -> Self {
        let mut vertices = phi.to_vec();
        vertices.sort_unstable();
        G3Unit { phi, vertices }
    }

    /// The `T_2` copy carried by every `G_3` unit.
    pub fn t2_embedding(&self) -> TreeEmbedding {
        let image = G3_T2_IMAGE.iter().map(|&i| self.phi[i]).collect();
        TreeEmbedding::new(2, image).expect("seven image vertices")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct G3Units {
    /// Disjoint 4-cliques chosen in the literal phase.
    pub cliques: Vec<[usize; 4]>,
    /// Units grown from those cliques.
    pub literal: Vec<G3Unit>,
    /// Units found by direct search on the vertices left over.
    pub fallback: Vec<G3Unit>,
    /// False if the direct search ran out of nodes.
    pub fallback_complete: bool,
}

impl G3Units {
    /// All units, literal first; pairwise disjoint.
    pub fn units(&self) -> impl Iterator<Item = &G3Unit> {
        self.literal.iter().chain(&self.fallback)
    }

    pub fn vertex_sets(&self) -> Vec<Vec<usize>> {
        self.units().map(|u| u.vertices.clone()).collect()
    }
}

pub fn find_g3_units(g: &Graph) -> G3Units {
    find_g3_units_with(g, HeuristicOptions::default().g3_search_nodes)
}

pub fn find_g3_units_with(g: &Graph, max_nodes: u64) -> G3Units {
    let n = g.vertex_count();
    let mut used = vec![false; n];
    let mut units = G3Units {
        fallback_complete: true,
        ..Default::default()
    };
    for q in four_cliques(g) {
        if q.iter().any(|&v| used[v]) {
            continue;
        }
        for &v in &q {
            used[v] = true;
        }
        units.cliques.push(q);
    }
    for &q in &units.cliques {
        if let Some(unit) = grow_clique(g, q, &units.literal) {
            units.literal.push(unit);
        }
    }
    let mut taken = vec![false; n];
    for &v in units.literal.iter().flat_map(|u| u.vertices.iter()) {
        taken[v] = true;
    }
    let (copies, complete) = g3_copies(g, &taken, max_nodes);
    units.fallback_complete = complete;
    for unit in copies {
        if unit.vertices.iter().all(|&v| !taken[v]) {
            for &v in &unit.vertices {
                taken[v] = true;
            }
            units.fallback.push(unit);
        }
    }
    units
}

/// 4-cliques with ascending members, in lexicographic order.
fn four_cliques(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..g.vertex_count() {
        let up = |v: usize, lo: usize| g.neighbors(v).iter().copied().filter(move |&w| w > lo);
        for b in up(a, a) {
            for c in up(b, b).filter(|&c| g.has_edge(a, c)) {
                for d in up(c, c).filter(|&d| g.has_edge(a, d) && g.has_edge(b, d)) {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Looks for a `G_3` copy on the clique plus three of its free neighbors.
/// Vertices of other chosen cliques stay available until a unit claims them.
fn grow_clique(g: &Graph, q: [usize; 4], claimed: &[G3Unit]) -> Option<G3Unit> {
    let n = g.vertex_count();
    let mut blocked = vec![false; n];
    for &v in claimed.iter().flat_map(|u| u.vertices.iter()) {
        blocked[v] = true;
    }
    if q.iter().any(|&v| blocked[v]) {
        return None;
    }
    let mut around: Vec<usize> = q
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .filter(|&w| !blocked[w] && !q.contains(&w))
        .collect();
    around.sort_unstable();
    around.dedup();
    for i in 0..around.len() {
        for j in i + 1..around.len() {
            for k in j + 1..around.len() {
                let mut set = q.to_vec();
                set.extend([around[i], around[j], around[k]]);
                let (sub, map) = g.induced(&set);
                let (copies, _) = g3_copies(&sub, &[false; 7], u64::MAX);
                if let Some(u) = copies.into_iter().next() {
                    return Some(G3Unit::new(u.phi.map(|v| map[v])));
                }
            }
        }
    }
    None
}

/// Canonical vertices in search order: each after a neighbor, so every
/// placement after the first is anchored in an adjacency list.
const G3_ORDER: [usize; 7] = [0, 2, 3, 4, 1, 6, 5];

fn g3_adjacency() -> [Vec<usize>; 7] {
    let mut adj: [Vec<usize>; 7] = Default::default();
    for &(a, b) in &G3_EDGES {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Distinct vertex sets carrying a `G_3` copy, avoiding `blocked`, sorted by
/// vertex set; each keeps its lexicographically first mapping.
fn g3_copies(g: &Graph, blocked: &[bool], max_nodes: u64) -> (Vec<G3Unit>, bool) {
    struct Search<'a> {
        g: &'a Graph,
        adj: [Vec<usize>; 7],
        blocked: &'a [bool],
        phi: [usize; 7],
        in_use: Vec<bool>,
        found: std::collections::BTreeMap<Vec<usize>, [usize; 7]>,
        nodes: u64,
        limit: u64,
    }
    impl Search<'_> {
        fn place(&mut self, depth: usize) -> bool {
            self.nodes += 1;
            if self.nodes > self.limit {
                return false;
            }
            if depth == 7 {
                let unit = G3Unit::new(self.phi);
                self.found.entry(unit.vertices).or_insert(self.phi);
                return true;
            }
            let c = G3_ORDER[depth];
            let placed: Vec<usize> = self.adj[c]
                .iter()
                .copied()
                .filter(|&d| G3_ORDER[..depth].contains(&d))
                .collect();
            let need = self.adj[c].len();
            let candidates: Vec<usize> = match placed.first() {
                Some(&anchor) => self.g.neighbors(self.phi[anchor]).to_vec(),
                None => (0..self.g.vertex_count()).collect(),
            };
            for h in candidates {
                if self.blocked[h]
                    || self.in_use[h]
                    || self.g.degree(h) < need
                    || !placed.iter().all(|&d| self.g.has_edge(self.phi[d], h))
                {
                    continue;
                }
                self.phi[c] = h;
                self.in_use[h] = true;
                let ok = self.place(depth + 1);
                self.in_use[h] = false;
                if !ok {
                    return false;
                }
            }
            true
        }
    }
    let mut s = Search {
        g,
        adj: g3_adjacency(),
        blocked,
        phi: [0; 7],
        in_use: vec![false; g.vertex_count()],
        found: Default::default(),
        nodes: 0,
        limit: max_nodes,
    };
    let complete = s.place(0);
    let units = s.found.into_values().map(G3Unit::new).collect();
    (units, complete)
}

pub fn pack_t2(g: &Graph) -> PackingSolution {
    pack_t2_with(g, &HeuristicOptions::default())
}

pub fn pack_t2_with(g: &Graph, options: &HeuristicOptions) -> PackingSolution {
    let mut used = vec![false; g.vertex_count()];
    let mut embeddings = Vec::new();
    for block in detect_blocks(g, options.blocks) {
        let free: Vec<usize> = block.into_iter().filter(|&v| !used[v]).collect();
        if free.len() < 7 {
            continue;
        }
        let (sub, map) = g.induced(&free);
        for unit in find_g3_units_with(&sub, options.g3_search_nodes).units() {
            let unit = G3Unit::new(unit.phi.map(|v| map[v]));
            for &v in &unit.vertices {
                used[v] = true;
            }
            embeddings.push(unit.t2_embedding());
        }
    }
    embeddings.sort();
    PackingSolution { k: 2, embeddings }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        barbell, canonical_g3, chorded_cycle_family, complete_graph, cycle_family, cycle_graph,
        h_chain, ChordSpec,
    };
    use crate::oracle::{max_packing, validate_packing, OracleBudget};
    use crate::random::{planted_g3_graph, random_connected_graph};

    fn alpha(g: &Graph, k: usize) -> usize {
        max_packing(g, k, &OracleBudget::default()).unwrap().size()
    }

    #[test]
    fn t1_examples() {
        assert_eq!(pack_t1(&cycle_family(2).unwrap()).size(), 2);
        let cc = chorded_cycle_family(4, &[ChordSpec::new(0, 6, 6)]).unwrap();
        assert_eq!(pack_t1(&cc).size(), 5);
        let b = barbell(4).unwrap();
        let p = pack_t1(&b);
        assert_eq!(p.size(), 3);
        assert_eq!(p.size(), alpha(&b, 1));
    }

    #[test]
    fn t1_on_forests_and_tiny_graphs() {
        assert_eq!(
            pack_t1(&Graph::from_edge_list(2, &[(0, 1)]).unwrap()).size(),
            0
        );
        assert_eq!(pack_t1(&Graph::empty(0)).size(), 0);
        let p = crate::constructions::path_family(4).unwrap();
        assert_eq!(pack_t1(&p).size(), 4);
    }

    #[test]
    fn g3_unit_examples() {
        let k7 = find_g3_units(&complete_graph(7));
        assert!(!k7.cliques.is_empty());
        assert_eq!(k7.literal.len(), 1);
        let h2 = find_g3_units(&h_chain(2).unwrap());
        assert!(h2.cliques.is_empty() && h2.literal.is_empty());
        assert_eq!(
            h2.vertex_sets(),
            vec![(0..7).collect::<Vec<_>>(), (7..14).collect()]
        );
        assert_eq!(find_g3_units(&cycle_graph(9)).units().count(), 0);
    }

    #[test]
    fn t2_examples() {
        let g3 = pack_t2(&canonical_g3());
        assert_eq!(g3.size(), 1);
        assert_eq!(g3.embeddings[0].image_vertices(), &[0, 3, 4, 5, 6, 1, 2]);
        assert_eq!(pack_t2(&h_chain(2).unwrap()).size(), 2);
        assert_eq!(pack_t2(&cycle_graph(9)).size(), 0);
        assert_eq!(
            pack_t2(&Graph::from_edge_list(2, &[(0, 1)]).unwrap()).size(),
            0
        );
    }

    #[test]
    fn planted_copies_are_found() {
        let g = planted_g3_graph(8, 4, 20, 11);
        let p = pack_t2(&g);
        assert!(validate_packing(&g, 2, &p).packing_ok());
        assert!(p.size() >= 1);
    }

    #[test]
    fn reference_blocks_source() {
        let opts = HeuristicOptions {
            blocks: BlockSource::Reference,
            ..Default::default()
        };
        assert_eq!(pack_t1_with(&barbell(4).unwrap(), &opts).size(), 3);
        assert_eq!(pack_t2_with(&h_chain(2).unwrap(), &opts).size(), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn sound_and_bounded(n in 2usize..=14, extra in 0usize..10, seed: u64) {
                let g = random_connected_graph(n, extra, seed);
                let p1 = pack_t1(&g);
                prop_assert!(validate_packing(&g, 1, &p1).packing_ok());
                prop_assert!(p1.size() <= alpha(&g, 1));
                let p2 = pack_t2(&g);
                prop_assert!(validate_packing(&g, 2, &p2).packing_ok());
                prop_assert!(p2.size() <= alpha(&g, 2));
            }
        }
    }
}
