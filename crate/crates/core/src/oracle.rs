//! Exact packing number α and covering number β for `T_k` copies.
//!
//! Both searches work on vertex bitmasks of the enumerated embeddings, so the
//! host may have at most 128 vertices. Branching follows canonical embedding
//! order and ascending vertex ids, and the incumbent only changes on strict
//! improvement, which makes every returned witness deterministic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree::{
    enumerate_embeddings_bounded, first_embedding, is_valid_embedding, TreeEmbedding,
};

pub const MAX_ORACLE_ORDER: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_embeddings: u64,
    pub max_nodes: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_embeddings: 50_000,
            max_nodes: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingSolution {
    pub k: usize,
    pub embeddings: Vec<TreeEmbedding>,
}

impl PackingSolution {
    pub fn size(&self) -> usize {
        self.embeddings.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSolution {
    pub k: usize,
    /// Sorted ascending.
    pub vertices: Vec<usize>,
}

impl CoverSolution {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

fn embedding_masks(
    g: &Graph,
    k: usize,
    budget: &OracleBudget,
) -> Result<(Vec<TreeEmbedding>, Vec<u128>)> {
    if g.vertex_count() > MAX_ORACLE_ORDER {
        return Err(Error::Unsupported(format!(
            "exact oracle handles at most {MAX_ORACLE_ORDER} vertices (got {})",
            g.vertex_count()
        )));
    }
    let embeddings = enumerate_embeddings_bounded(g, k, budget.max_embeddings)?;
    let masks = embeddings
        .iter()
        .map(|e| {
            e.image_vertices()
                .iter()
                .fold(0u128, |m, &v| m | (1u128 << v))
        })
        .collect();
    Ok((embeddings, masks))
}

struct NodeCounter {
    nodes: u64,
    limit: u64,
}

impl NodeCounter {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded {
                budget: "max_nodes",
                limit: self.limit,
            });
        }
        Ok(())
    }
}

/// Maximum number of pairwise vertex-disjoint copies of `T_k`.
pub fn max_packing(g: &Graph, k: usize, budget: &OracleBudget) -> Result<PackingSolution> {
    let (embeddings, masks) = embedding_masks(g, k, budget)?;
    let order = (1usize << (k + 1)) - 1;
    let chosen = max_set_packing(&masks, order, budget.max_nodes)?;
    Ok(PackingSolution {
        k,
        embeddings: chosen.into_iter().map(|i| embeddings[i].clone()).collect(),
    })
}

/// Maximum collection of pairwise disjoint masks, each of popcount
/// `set_size`. Returns indices in ascending order.
pub fn max_set_packing(masks: &[u128], set_size: usize, max_nodes: u64) -> Result<Vec<usize>> {
    struct Packing<'a> {
        masks: &'a [u128],
        set_size: u32,
        best: Vec<u32>,
        counter: NodeCounter,
    }
    impl Packing<'_> {
        fn search(&mut self, cands: &[u32], chosen: &mut Vec<u32>) -> Result<()> {
            self.counter.tick()?;
            if chosen.len() > self.best.len() {
                self.best = chosen.clone();
            }
            if cands.is_empty() {
                return Ok(());
            }
            let union = cands.iter().fold(0u128, |m, &c| m | self.masks[c as usize]);
            let by_vertices = (union.count_ones() / self.set_size) as usize;
            if chosen.len() + by_vertices.min(cands.len()) <= self.best.len() {
                return Ok(());
            }
            // branch on the covered vertex with the fewest candidates
            let mut counts = [0u32; 128];
            for &c in cands {
                let mut m = self.masks[c as usize];
                while m != 0 {
                    counts[m.trailing_zeros() as usize] += 1;
                    m &= m - 1;
                }
            }
            let v = (0..128)
                .filter(|&v| counts[v] > 0)
                .min_by_key(|&v| (counts[v], v))
                .expect("candidates cover some vertex");
            let bit = 1u128 << v;
            for &c in cands.iter().filter(|&&c| self.masks[c as usize] & bit != 0) {
                let mask = self.masks[c as usize];
                let rest: Vec<u32> = cands
                    .iter()
                    .copied()
                    .filter(|&d| self.masks[d as usize] & mask == 0)
                    .collect();
                chosen.push(c);
                self.search(&rest, chosen)?;
                chosen.pop();
            }
            let rest: Vec<u32> = cands
                .iter()
                .copied()
                .filter(|&d| self.masks[d as usize] & bit == 0)
                .collect();
            self.search(&rest, chosen)
        }
    }
    let mut p = Packing {
        masks,
        set_size: set_size.max(1) as u32,
        best: Vec::new(),
        counter: NodeCounter {
            nodes: 0,
            limit: max_nodes,
        },
    };
    let all: Vec<u32> = (0..masks.len() as u32).collect();
    p.search(&all, &mut Vec::new())?;
    let mut best: Vec<usize> = p.best.into_iter().map(|c| c as usize).collect();
    best.sort_unstable();
    Ok(best)
}

/// Minimum vertex set meeting every copy of `T_k`.
pub fn min_cover(g: &Graph, k: usize, budget: &OracleBudget) -> Result<CoverSolution> {
    let (_, masks) = embedding_masks(g, k, budget)?;
    let cover = min_hitting_set(&masks, budget.max_nodes)?;
    Ok(CoverSolution {
        k,
        vertices: bits(cover),
    })
}

fn bits(mut m: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Greedy max-degree hitting set: repeatedly take the vertex in most open
/// sets, smallest id on ties.
fn greedy_hitting_set(sets: &[u128]) -> u128 {
    let mut open: Vec<u128> = sets.to_vec();
    let mut chosen = 0u128;
    while !open.is_empty() {
        let mut counts = [0u32; 128];
        for &s in &open {
            for v in bits(s) {
                counts[v] += 1;
            }
        }
        let v = (0..128)
            .max_by_key(|&v| (counts[v], std::cmp::Reverse(v)))
            .expect("nonempty range");
        chosen |= 1u128 << v;
        open.retain(|&s| s & (1u128 << v) == 0);
    }
    chosen
}

/// Minimum hitting set of nonempty masks.
pub fn min_hitting_set(sets: &[u128], max_nodes: u64) -> Result<u128> {
    struct Hitting<'a> {
        sets: &'a [u128],
        best: u128,
        best_size: u32,
        counter: NodeCounter,
    }
    impl Hitting<'_> {
        fn search(&mut self, chosen: u128, excluded: u128, open: &[u32]) -> Result<()> {
            self.counter.tick()?;
            let size = chosen.count_ones();
            if open.is_empty() {
                if size < self.best_size {
                    self.best = chosen;
                    self.best_size = size;
                }
                return Ok(());
            }
            // lower bound: sets that are disjoint on their allowed vertices
            // each need their own cover vertex
            let mut allowed: Vec<(u32, u128)> = open
                .iter()
                .map(|&s| {
                    let m = self.sets[s as usize] & !excluded;
                    (m.count_ones(), m)
                })
                .collect();
            if allowed.iter().any(|&(c, _)| c == 0) {
                return Ok(());
            }
            let (pick_idx, _) = allowed
                .iter()
                .enumerate()
                .min_by_key(|&(i, &(c, _))| (c, i))
                .expect("open is nonempty");
            let pick = allowed[pick_idx].1;
            allowed.sort_by_key(|&(c, _)| c);
            let mut used = 0u128;
            let mut disjoint = 0u32;
            for &(_, m) in &allowed {
                if m & used == 0 {
                    used |= m;
                    disjoint += 1;
                }
            }
            if size + disjoint >= self.best_size {
                return Ok(());
            }
            let mut earlier = 0u128;
            for v in bits(pick) {
                let bit = 1u128 << v;
                let rest: Vec<u32> = open
                    .iter()
                    .copied()
                    .filter(|&s| self.sets[s as usize] & bit == 0)
                    .collect();
                self.search(chosen | bit, excluded | earlier, &rest)?;
                earlier |= bit;
            }
            Ok(())
        }
    }
    if sets.contains(&0) {
        return Err(Error::InvalidParameter("cannot hit an empty set".into()));
    }
    let greedy = greedy_hitting_set(sets);
    let mut h = Hitting {
        sets,
        best: greedy,
        best_size: greedy.count_ones(),
        counter: NodeCounter {
            nodes: 0,
            limit: max_nodes,
        },
    };
    let all: Vec<u32> = (0..sets.len() as u32).collect();
    h.search(0, 0, &all)?;
    Ok(h.best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overlap {
    pub vertex: usize,
    pub first: usize,
    pub second: usize,
}

/// Outcome of [`validate_solution`]. Violations are reported, never raised.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// Indices into the packing of embeddings that are not valid copies of
    /// `T_k` in the host.
    pub invalid_embeddings: Vec<usize>,
    pub overlap: Option<Overlap>,
    /// A copy of `T_k` avoiding every cover vertex, if the cover fails.
    pub uncovered: Option<TreeEmbedding>,
    pub packing_size: usize,
    pub cover_size: Option<usize>,
}

impl ValidationReport {
    pub fn packing_ok(&self) -> bool {
        self.invalid_embeddings.is_empty() && self.overlap.is_none()
    }

    pub fn cover_ok(&self) -> bool {
        self.uncovered.is_none()
    }

    pub fn weak_duality(&self) -> bool {
        self.cover_size.is_none_or(|c| self.packing_size <= c)
    }

    pub fn is_ok(&self) -> bool {
        self.packing_ok() && self.cover_ok() && self.weak_duality()
    }
}

/// Checks embedding validity and disjointness of a packing.
pub fn validate_packing(g: &Graph, k: usize, p: &PackingSolution) -> ValidationReport {
    let invalid_embeddings = p
        .embeddings
        .iter()
        .enumerate()
        .filter(|(_, e)| e.k() != k || !is_valid_embedding(g, e))
        .map(|(i, _)| i)
        .collect();
    let mut owner = vec![usize::MAX; g.vertex_count()];
    let mut overlap = None;
    'outer: for (i, e) in p.embeddings.iter().enumerate() {
        for &v in e.image_vertices() {
            if v >= owner.len() {
                continue;
            }
            if owner[v] != usize::MAX && owner[v] != i {
                overlap = Some(Overlap {
                    vertex: v,
                    first: owner[v],
                    second: i,
                });
                break 'outer;
            }
            owner[v] = i;
        }
    }
    ValidationReport {
        invalid_embeddings,
        overlap,
        uncovered: None,
        packing_size: p.size(),
        cover_size: None,
    }
}

/// Checks a packing and a cover together. The cover is checked by
/// re-enumerating copies of `T_k` in `g` with the cover vertices removed.
pub fn validate_solution(
    g: &Graph,
    k: usize,
    p: &PackingSolution,
    c: &CoverSolution,
) -> Result<ValidationReport> {
    let mut report = validate_packing(g, k, p);
    let rest = g.without_vertices(&c.vertices);
    report.uncovered = first_embedding(&rest, k)?;
    report.cover_size = Some(c.size());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle_family, cycle_graph, path_family, star_graph};

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn cycle_and_path_values() {
        assert_eq!(
            max_packing(&cycle_family(2).unwrap(), 1, &budget())
                .unwrap()
                .size(),
            2
        );
        assert_eq!(
            max_packing(&path_family(3).unwrap(), 1, &budget())
                .unwrap()
                .size(),
            3
        );
        assert_eq!(
            min_cover(&cycle_family(3).unwrap(), 1, &budget())
                .unwrap()
                .size(),
            3
        );
    }

    #[test]
    fn degenerate_inputs() {
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(max_packing(&k2, 1, &budget()).unwrap().size(), 0);
        assert_eq!(min_cover(&k2, 1, &budget()).unwrap().size(), 0);
        let star = min_cover(&star_graph(3), 1, &budget()).unwrap();
        assert_eq!(star.vertices, vec![0]);
    }

    #[test]
    fn validation_accepts_optimal_pair() {
        let g = cycle_graph(6);
        let p = max_packing(&g, 1, &budget()).unwrap();
        let c = min_cover(&g, 1, &budget()).unwrap();
        let report = validate_solution(&g, 1, &p, &c).unwrap();
        assert!(report.is_ok(), "{report:?}");
        assert_eq!((report.packing_size, report.cover_size), (2, Some(2)));
    }

    #[test]
    fn validation_reports_uncovered_copy() {
        let g = cycle_graph(6);
        let p = max_packing(&g, 1, &budget()).unwrap();
        let mut c = min_cover(&g, 1, &budget()).unwrap();
        c.vertices.pop();
        let report = validate_solution(&g, 1, &p, &c).unwrap();
        let witness = report.uncovered.clone().expect("cover lost a vertex");
        assert!(witness
            .image_vertices()
            .iter()
            .all(|v| !c.vertices.contains(v)));
        assert!(!report.is_ok());
    }

    #[test]
    fn validation_reports_overlap() {
        let g = cycle_graph(6);
        let p = PackingSolution {
            k: 1,
            embeddings: vec![
                TreeEmbedding::new(1, vec![1, 0, 2]).unwrap(),
                TreeEmbedding::new(1, vec![2, 1, 3]).unwrap(),
            ],
        };
        let report = validate_packing(&g, 1, &p);
        assert_eq!(
            report.overlap,
            Some(Overlap {
                vertex: 2,
                first: 0,
                second: 1
            })
        );
    }

    #[test]
    fn node_budget_is_reported() {
        let tight = OracleBudget {
            max_embeddings: 50_000,
            max_nodes: 3,
        };
        let err = max_packing(&cycle_graph(12), 1, &tight).unwrap_err();
        assert!(matches!(
            err,
            Error::BudgetExceeded {
                budget: "max_nodes",
                ..
            }
        ));
    }

    #[test]
    fn too_many_vertices() {
        assert!(matches!(
            max_packing(&cycle_graph(130), 1, &budget()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn family_values() {
        use crate::constructions::{chorded_cycle_family, h_chain, ChordSpec};
        assert_eq!(
            max_packing(&h_chain(2).unwrap(), 2, &budget())
                .unwrap()
                .size(),
            2
        );
        assert_eq!(
            min_cover(&cycle_family(3).unwrap(), 1, &budget())
                .unwrap()
                .size(),
            3
        );
        let g = chorded_cycle_family(4, &[ChordSpec::new(0, 6, 6)]).unwrap();
        assert_eq!(min_cover(&g, 1, &budget()).unwrap().size(), 5);
    }

    fn naive_alpha_beta(n: usize, masks: &[u128]) -> (usize, usize) {
        let mut alpha = 0;
        for subset in 0u32..1 << masks.len() {
            let picked: Vec<u128> = (0..masks.len())
                .filter(|i| subset >> i & 1 == 1)
                .map(|i| masks[i])
                .collect();
            let disjoint = picked
                .iter()
                .enumerate()
                .all(|(i, a)| picked[i + 1..].iter().all(|b| a & b == 0));
            if disjoint {
                alpha = alpha.max(picked.len());
            }
        }
        let mut beta = usize::MAX;
        for cover in 0u64..1 << n {
            let c = cover as u128;
            if masks.iter().all(|m| m & c != 0) {
                beta = beta.min(cover.count_ones() as usize);
            }
        }
        (alpha, beta)
    }

    #[test]
    fn agrees_with_power_set_exhaustion() {
        use crate::random::random_connected_graph;
        let mut checked = 0;
        for seed in 0..400u64 {
            let n = 4 + (seed % 8) as usize;
            let g = random_connected_graph(n, (seed % 4) as usize, seed);
            for k in 1..=2 {
                let (_, masks) = embedding_masks(&g, k, &budget()).unwrap();
                if masks.is_empty() || masks.len() > 12 {
                    continue;
                }
                let alpha = max_packing(&g, k, &budget()).unwrap().size();
                let beta = min_cover(&g, k, &budget()).unwrap().size();
                assert_eq!(
                    (alpha, beta),
                    naive_alpha_beta(n, &masks),
                    "seed {seed} k {k}"
                );
                checked += 1;
            }
        }
        assert!(checked >= 50, "only {checked} small instances");
    }

    mod props {
        use super::*;
        use crate::random::random_connected_graph;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn weak_duality_and_cover_validity(n in 3usize..=12, extra in 0usize..8, seed: u64, k in 1usize..=2) {
                let g = random_connected_graph(n, extra, seed);
                let p = max_packing(&g, k, &budget()).unwrap();
                let c = min_cover(&g, k, &budget()).unwrap();
                let report = validate_solution(&g, k, &p, &c).unwrap();
                prop_assert!(report.is_ok(), "{:?}", report);
                prop_assert!(enumerate_embeddings_bounded(&g.without_vertices(&c.vertices), k, u64::MAX).unwrap().is_empty());
            }

            #[test]
            fn deterministic(n in 3usize..=12, extra in 0usize..8, seed: u64) {
                let g = random_connected_graph(n, extra, seed);
                prop_assert_eq!(max_packing(&g, 1, &budget()).unwrap(), max_packing(&g, 1, &budget()).unwrap());
                prop_assert_eq!(min_cover(&g, 1, &budget()).unwrap(), min_cover(&g, 1, &budget()).unwrap());
            }
        }
    }
}
