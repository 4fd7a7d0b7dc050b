//! Deterministic generators for the graph families used throughout the
//! crate: paths and cycles of length `3r`, cycles with chord paths, the
//! attached-path counterexample family, the seven-vertex structure `G₃`
//! and chains of `G₃` copies.
//!
//! Vertex ids are assigned in a fixed order, so identical parameters give
//! identical edge lists.

use serde::{Deserialize, Serialize};

use crate::cycle::{longest_cycle, SearchBudget};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSplitSpec};

/// A path of `length` edges between two cycle positions, with `length - 1`
/// fresh internal vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordSpec {
    pub start: usize,
    pub end: usize,
    pub length: usize,
}

impl ChordSpec {
    pub fn new(start: usize, end: usize, length: usize) -> Self {
        ChordSpec { start, end, length }
    }
}

/// Family tag plus parameters, as accepted by [`FamilySpec::build`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Path { r: usize },
    Cycle { r: usize },
    ChordedCycle { r: usize, chords: Vec<ChordSpec> },
    ErdosPosa { r: usize, h: usize, i: usize },
    G3,
    HChain { r: usize },
    Barbell { path_edges: usize },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            FamilySpec::Path { r } => path_family(*r),
            FamilySpec::Cycle { r } => cycle_family(*r),
            FamilySpec::ChordedCycle { r, chords } => chorded_cycle_family(*r, chords),
            FamilySpec::ErdosPosa { r, h, i } => erdos_posa_family(*r, *h, *i),
            FamilySpec::G3 => Ok(canonical_g3()),
            FamilySpec::HChain { r } => h_chain(*r),
            FamilySpec::Barbell { path_edges } => barbell(*path_edges),
        }
    }
}

fn require_r(r: usize) -> Result<()> {
    if r < 1 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    Ok(())
}

/// Path with `3r` edges, vertices in path order.
pub fn path_family(r: usize) -> Result<Graph> {
    require_r(r)?;
    Ok(path_graph(3 * r + 1))
}

/// Cycle `a₀ … a_{3r-1}`; vertex id equals cycle position.
pub fn cycle_family(r: usize) -> Result<Graph> {
    require_r(r)?;
    Ok(cycle_graph(3 * r))
}

/// Cycle of length `3r` plus one path per chord, checked so that the base
/// cycle stays a longest cycle.
///
/// Chords are checked one at a time: first against both arcs between their
/// ends, then by an exact longest-cycle search over the graph built so far,
/// which catches cycles running through several chords.
pub fn chorded_cycle_family(r: usize, chords: &[ChordSpec]) -> Result<Graph> {
    require_r(r)?;
    let len = 3 * r;
    let mut pairs: Vec<(usize, usize)> = (0..len).map(|i| (i, (i + 1) % len)).collect();
    let mut next = len;
    for (idx, chord) in chords.iter().enumerate() {
        if chord.start >= len || chord.end >= len {
            return Err(Error::InvalidParameter(format!(
                "chord {idx} endpoint outside cycle of length {len}"
            )));
        }
        if chord.start == chord.end {
            return Err(Error::InvalidParameter(format!(
                "chord {idx} has equal endpoints"
            )));
        }
        if chord.length == 0 || chord.length % 3 != 0 {
            return Err(Error::InvalidParameter(format!(
                "chord {idx} length {} is not a positive multiple of 3",
                chord.length
            )));
        }
        let (a, b) = (chord.start.min(chord.end), chord.start.max(chord.end));
        let arcs = [b - a, len - (b - a)];
        let (longer, arc_forward) = if arcs[0] >= arcs[1] {
            (arcs[0], true)
        } else {
            (arcs[1], false)
        };
        if chord.length + longer > len {
            // the longer arc, then back along the chord using the ids its
            // internal vertices would receive
            let (mut cycle, arc_end): (Vec<usize>, usize) = if arc_forward {
                ((a..=b).collect(), b)
            } else {
                ((b..len).chain(0..=a).collect(), a)
            };
            let internal = next..next + chord.length - 1;
            if chord.start == arc_end {
                cycle.extend(internal);
            } else {
                cycle.extend(internal.rev());
            }
            return Err(Error::LongestCycleViolation {
                chord: idx,
                cycle_len: chord.length + longer,
                bound: len,
                cycle,
            });
        }
        let internal: Vec<usize> = (next..next + chord.length - 1).collect();
        next += chord.length - 1;
        let mut walk = vec![chord.start];
        walk.extend(&internal);
        walk.push(chord.end);
        pairs.extend(walk.windows(2).map(|w| (w[0], w[1])));
        let g = Graph::from_edge_list(next, &pairs)?;
        if let Some(c) = longest_cycle(&g, SearchBudget::default()) {
            if c.length > len || !c.exact {
                return Err(Error::LongestCycleViolation {
                    chord: idx,
                    cycle_len: c.length,
                    bound: len,
                    cycle: c.vertices,
                });
            }
        }
    }
    Graph::from_edge_list(next, &pairs)
}

/// Cycle `C^{3r}` with `h` internally disjoint three-edge paths between
/// `a_{3i+1}` and `a_{3i+4}`. Path `p` uses internal vertices
/// `3r + 2p` and `3r + 2p + 1`.
pub fn erdos_posa_family(r: usize, h: usize, i: usize) -> Result<Graph> {
    if r < 2 {
        return Err(Error::InvalidParameter("r must be at least 2".into()));
    }
    if h < 1 {
        return Err(Error::InvalidParameter("h must be at least 1".into()));
    }
    let len = 3 * r;
    if 3 * i + 4 >= len {
        return Err(Error::InvalidParameter(format!(
            "attachment a_{} exceeds cycle of length {len}",
            3 * i + 4
        )));
    }
    let (s, t) = (3 * i + 1, 3 * i + 4);
    let mut pairs: Vec<(usize, usize)> = (0..len).map(|j| (j, (j + 1) % len)).collect();
    for p in 0..h {
        let (x, y) = (len + 2 * p, len + 2 * p + 1);
        pairs.extend([(s, x), (x, y), (y, t)]);
    }
    Graph::from_edge_list(len + 2 * h, &pairs)
}

/// Edge list of the seven-vertex structure `G₃`, with `v₁..v₄ → 0..3` and
/// `v'₁, v'₂, v'₃ → 4, 5, 6`.
pub const G3_EDGES: [(usize, usize); 12] = [
    (0, 4),
    (0, 3),
    (0, 2),
    (1, 5),
    (1, 4),
    (1, 3),
    (2, 6),
    (2, 4),
    (3, 5),
    (3, 6),
    (4, 6),
    (5, 6),
];

/// The `T₂` inside `G₃` rooted at `v₁`, in level order:
/// `v₁; v₄, v'₁; v'₃, v'₂ under v₄; v₃, v₂ under v'₁`.
pub const G3_T2_IMAGE: [usize; 7] = [0, 3, 4, 6, 5, 2, 1];

pub fn canonical_g3() -> Graph {
    Graph::from_edge_list(7, &G3_EDGES).expect("fixed edge list is valid")
}

/// The three vertex splits that turn `K⁴` into `G₃`, in order.
pub fn g3_anti_contractions() -> [VertexSplitSpec; 3] {
    [
        // v₁ → v₁, v'₁ (id 4): v'₁ takes v₂
        VertexSplitSpec {
            target: 0,
            kept: vec![2, 3],
            moved: vec![1],
            extra_edges: vec![(0, 4), (4, 2)],
        },
        // v₂ → v₂, v'₂ (id 5): v'₂ takes v₃
        VertexSplitSpec {
            target: 1,
            kept: vec![3, 4],
            moved: vec![2],
            extra_edges: vec![(1, 5), (5, 3)],
        },
        // v₃ → v₃, v'₃ (id 6): v'₃ takes v₄ and v'₂
        VertexSplitSpec {
            target: 2,
            kept: vec![0, 4],
            moved: vec![3, 5],
            extra_edges: vec![(2, 6), (4, 6)],
        },
    ]
}

/// `r` copies of `G₃` (copy `c` on ids `7c..7c+6`), consecutive copies
/// joined by the matching `7(c-1)+j -- 7c+j`.
pub fn h_chain(r: usize) -> Result<Graph> {
    require_r(r)?;
    let mut pairs = Vec::with_capacity(12 * r + 7 * (r - 1));
    for c in 0..r {
        let off = 7 * c;
        pairs.extend(G3_EDGES.iter().map(|&(u, v)| (u + off, v + off)));
        if c > 0 {
            pairs.extend((0..7).map(|j| (off - 7 + j, off + j)));
        }
    }
    Graph::from_edge_list(7 * r, &pairs)
}

/// Two triangles joined by a path of `path_edges` edges. The first triangle
/// is `0, 1, 2`, the path runs from 2 through `path_edges - 1` internal
/// vertices to the first vertex of the second triangle.
pub fn barbell(path_edges: usize) -> Result<Graph> {
    if path_edges < 1 {
        return Err(Error::InvalidParameter(
            "path needs at least one edge".into(),
        ));
    }
    let b = 2 + path_edges;
    let n = b + 3;
    let mut pairs = vec![
        (0, 1),
        (1, 2),
        (0, 2),
        (b, b + 1),
        (b + 1, b + 2),
        (b, b + 2),
    ];
    pairs.extend((2..b).map(|v| (v, v + 1)));
    Graph::from_edge_list(n, &pairs)
}

pub fn path_graph(n: usize) -> Graph {
    let pairs: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edge_list(n, &pairs).expect("path edges are valid")
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let pairs: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::from_edge_list(n, &pairs).expect("cycle edges are valid")
}

pub fn complete_graph(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edge_list(n, &pairs).expect("clique edges are valid")
}

/// Star `K_{1,leaves}` centered at 0.
pub fn star_graph(leaves: usize) -> Graph {
    let pairs: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::from_edge_list(leaves + 1, &pairs).expect("star edges are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minor::has_clique_minor;
    use crate::tree::{is_valid_embedding, TreeEmbedding};

    #[test]
    fn path_and_cycle_sizes() {
        let p = path_family(1).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (4, 3));
        let p = path_family(3).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 9));
        assert!(path_family(0).is_err());
        assert_eq!(cycle_family(2).unwrap(), cycle_graph(6));
        assert_eq!(cycle_family(1).unwrap().edge_count(), 3);
        let c12 = cycle_family(4).unwrap();
        assert!((0..12).all(|v| c12.degree(v) == 2));
    }

    #[test]
    fn chorded_cycle_sizes() {
        let g = chorded_cycle_family(4, &[ChordSpec::new(0, 6, 6)]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (17, 18));
        let g = chorded_cycle_family(2, &[ChordSpec::new(0, 3, 3)]).unwrap();
        assert_eq!(g.vertex_count(), 8);
    }

    #[test]
    fn chord_creating_longer_cycle_is_rejected() {
        let err = chorded_cycle_family(3, &[ChordSpec::new(0, 6, 6)]).unwrap_err();
        match err {
            Error::LongestCycleViolation {
                chord,
                cycle_len,
                bound,
                ..
            } => assert_eq!((chord, cycle_len, bound), (0, 12, 9)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn crossing_chords_are_rejected_by_search() {
        // each chord alone respects both arcs; together they close an
        // 18-cycle through both chords
        let chords = [ChordSpec::new(0, 6, 6), ChordSpec::new(3, 9, 6)];
        let err = chorded_cycle_family(4, &chords).unwrap_err();
        assert!(
            matches!(err, Error::LongestCycleViolation { chord: 1, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn bad_chord_lengths() {
        assert!(chorded_cycle_family(4, &[ChordSpec::new(0, 6, 4)]).is_err());
        assert!(chorded_cycle_family(4, &[ChordSpec::new(0, 12, 3)]).is_err());
    }

    #[test]
    fn erdos_posa_sizes() {
        for (r, h, n, m) in [(2, 1, 8, 9), (2, 2, 10, 12), (3, 2, 13, 15)] {
            let g = erdos_posa_family(r, h, 0).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (n, m));
        }
        assert!(erdos_posa_family(2, 1, 1).is_err());
        assert!(erdos_posa_family(1, 1, 0).is_err());
    }

    #[test]
    fn g3_properties() {
        let g = canonical_g3();
        assert_eq!((g.vertex_count(), g.edge_count()), (7, 12));
        assert!(g.is_k_connected(3));
        assert!(has_clique_minor(&g, 4).unwrap());
        let t2 = TreeEmbedding::new(2, G3_T2_IMAGE.to_vec()).unwrap();
        assert!(is_valid_embedding(&g, &t2));
        assert_eq!(t2.root(), 0);
        assert_eq!(t2.level(1), &[3, 4]);
    }

    #[test]
    fn g3_contracts_to_k4() {
        let g = canonical_g3()
            .contract_edge(2, 6)
            .and_then(|g| g.contract_edge(1, 5))
            .and_then(|g| g.contract_edge(0, 4))
            .unwrap();
        assert_eq!(g, complete_graph(4));
    }

    #[test]
    fn anti_contractions_rebuild_g3() {
        let mut g = complete_graph(4);
        let mut degrees = Vec::new();
        for spec in g3_anti_contractions() {
            g = g.split_vertex(&spec).unwrap();
            assert_eq!(
                g.contract_edge(spec.target, g.vertex_count() - 1)
                    .unwrap()
                    .vertex_count(),
                g.vertex_count() - 1
            );
            degrees.push((g.degree(spec.target), g.degree(g.vertex_count() - 1)));
        }
        // the third split leaves v'3 with degree 4
        assert_eq!(degrees, vec![(3, 3), (3, 3), (3, 4)]);
        assert_eq!(g, canonical_g3());
    }

    #[test]
    fn h_chain_sizes() {
        assert_eq!(h_chain(1).unwrap(), canonical_g3());
        let g = h_chain(2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (14, 31));
        assert!(g.is_k_connected(3));
        let g = h_chain(3).unwrap();
        assert_eq!(g.edge_count(), 12 * 3 + 7 * 2);
    }

    #[test]
    fn barbell_shape() {
        let g = barbell(4).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 10);
        assert!(g.has_edge(2, 3) && g.has_edge(5, 6));
    }

    #[test]
    fn generators_are_deterministic() {
        let spec = FamilySpec::ChordedCycle {
            r: 6,
            chords: vec![ChordSpec::new(0, 6, 6), ChordSpec::new(9, 15, 6)],
        };
        assert_eq!(
            spec.build().unwrap().edge_list(),
            spec.build().unwrap().edge_list()
        );
    }
}
