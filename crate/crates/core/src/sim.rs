//! Synchronous round simulation of routing-table block detection.
//!
//! Every vertex keeps one path per neighbor port. In round 1 each port holds
//! the single hop to that neighbor; in every later round a port path is
//! replaced by one of the neighbor's previous-round paths prefixed with the
//! owner. Candidates are ranked longest first, then lexicographically, and
//! the first one compatible with the ports already refreshed this round
//! wins. If none is, the longest compatible prefix of a candidate is kept
//! when it beats the current path. Two port paths are compatible when
//! their prefixes up to any common vertex share nothing but the owner, so the
//! number of ports of `i` whose path visits `j` counts internally disjoint
//! `i`-`j` paths.

use serde::{Deserialize, Serialize};

use crate::blocks::{
    biconnected_components, merge_overlapping, reference_blocks, BlockDecomposition,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RoutingTable {
    pub owner: usize,
    /// Neighbor ids, ascending; one port each.
    pub ports: Vec<usize>,
    /// Path per port, starting at `owner` and continuing through the port's
    /// neighbor. `None` before round 1.
    pub port_paths: Vec<Option<Vec<usize>>>,
}

impl RoutingTable {
    fn empty(g: &Graph, owner: usize) -> Self {
        let ports = g.neighbors(owner).to_vec();
        RoutingTable {
            owner,
            port_paths: vec![None; ports.len()],
            ports,
        }
    }

    pub fn paths(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.port_paths.iter().flatten()
    }

    /// Number of port paths that visit `target`.
    pub fn count_visits(&self, target: usize) -> usize {
        self.paths().filter(|p| p[1..].contains(&target)).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimState {
    pub round: usize,
    pub tables: Vec<RoutingTable>,
    /// Symmetric independent-path counts, filled once the run is finished.
    pub x_matrix: Option<Vec<Vec<usize>>>,
}

impl SimState {
    pub fn new(g: &Graph) -> Self {
        SimState {
            round: 0,
            tables: (0..g.vertex_count())
                .map(|v| RoutingTable::empty(g, v))
                .collect(),
            x_matrix: None,
        }
    }

    pub fn total_rounds(&self) -> usize {
        self.tables.len()
    }

    /// Computes `x_matrix` from the current tables. Called automatically
    /// when the last round completes.
    pub fn finalize(&mut self) {
        let n = self.tables.len();
        let mut x = vec![vec![0; n]; n];
        for (i, j) in (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))) {
            let c = self.tables[i]
                .count_visits(j)
                .max(self.tables[j].count_visits(i));
            x[i][j] = c;
            x[j][i] = c;
        }
        self.x_matrix = Some(x);
    }
}

/// Position lookup for one decided path, for compatibility tests.
struct Positions {
    pos: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl Positions {
    fn new(n: usize) -> Self {
        Positions {
            pos: vec![ABSENT; n],
        }
    }

    fn load(&mut self, path: &[usize]) {
        for (i, &w) in path.iter().enumerate().skip(1) {
            self.pos[w] = i as u32;
        }
    }

    fn clear(&mut self, path: &[usize]) {
        for &w in &path[1..] {
            self.pos[w] = ABSENT;
        }
    }

    /// Common vertices must appear in strictly reversed order.
    fn compatible(&self, candidate: &[usize]) -> bool {
        let mut last = ABSENT;
        for &w in &candidate[1..] {
            let p = self.pos[w];
            if p != ABSENT {
                if last != ABSENT && p >= last {
                    return false;
                }
                last = p;
            }
        }
        true
    }
}

fn compatible_with_all(
    candidate: &[usize],
    decided: &[Vec<usize>],
    scratch: &mut Positions,
) -> bool {
    decided.iter().all(|d| {
        scratch.load(d);
        let ok = scratch.compatible(candidate);
        scratch.clear(d);
        ok
    })
}

/// One synchronous refresh and broadcast. Every vertex reads only the
/// previous round's tables.
pub fn step_round(state: &SimState, g: &Graph) -> Result<SimState> {
    let n = g.vertex_count();
    if state.tables.len() != n {
        return Err(Error::InvalidParameter(format!(
            "state has {} tables for a graph on {n} vertices",
            state.tables.len()
        )));
    }
    if state.round >= n {
        return Err(Error::RoundsExhausted(n));
    }
    let mut scratch = Positions::new(n);
    let tables = state
        .tables
        .iter()
        .map(|t| refresh(t, state, &mut scratch))
        .collect();
    let mut next = SimState {
        round: state.round + 1,
        tables,
        x_matrix: None,
    };
    if next.round == n {
        next.finalize();
    }
    Ok(next)
}

/// Length of the longest prefix of `c` compatible with `decided`; the
/// single hop always is.
fn longest_compatible_prefix(
    c: &[usize],
    decided: &[Vec<usize>],
    scratch: &mut Positions,
) -> usize {
    let mut best = 2;
    for len in (3..=c.len()).rev() {
        if compatible_with_all(&c[..len], decided, scratch) {
            best = len;
            break;
        }
    }
    best
}

fn refresh(table: &RoutingTable, state: &SimState, scratch: &mut Positions) -> RoutingTable {
    let v = table.owner;
    let mut decided: Vec<Vec<usize>> = Vec::with_capacity(table.ports.len());
    for (port, &u) in table.ports.iter().enumerate() {
        let chosen = if state.round == 0 {
            vec![v, u]
        } else {
            let mut candidates: Vec<Vec<usize>> = state.tables[u]
                .paths()
                .filter(|q| !q.contains(&v))
                .map(|q| {
                    let mut c = Vec::with_capacity(q.len() + 1);
                    c.push(v);
                    c.extend_from_slice(q);
                    c
                })
                .collect();
            candidates.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
            let full = candidates
                .iter()
                .find(|c| compatible_with_all(c, &decided, scratch))
                .cloned();
            let truncated = || {
                let prev_len = table.port_paths[port].as_ref().map_or(0, |p| p.len());
                candidates
                    .iter()
                    .map(|c| (longest_compatible_prefix(c, &decided, scratch), c))
                    .filter(|&(l, _)| l > prev_len)
                    .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(a.1)))
                    .map(|(l, c)| c[..l].to_vec())
            };
            full.or_else(truncated)
                .or_else(|| {
                    table.port_paths[port]
                        .clone()
                        .filter(|p| compatible_with_all(p, &decided, scratch))
                })
                .unwrap_or_else(|| vec![v, u])
        };
        decided.push(chosen);
    }
    RoutingTable {
        owner: v,
        ports: table.ports.clone(),
        port_paths: decided.into_iter().map(Some).collect(),
    }
}

/// Number of independent `i`-`j` paths recorded after the run.
pub fn independent_path_count(state: &SimState, i: usize, j: usize) -> Result<usize> {
    let x = state.x_matrix.as_ref().ok_or(Error::Unfinished {
        round: state.round,
        total: state.total_rounds(),
    })?;
    let n = x.len();
    for v in [i, j] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    Ok(x[i][j])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SimOptions {
    /// Record every table after every round.
    pub trace: bool,
    /// Stop as soon as a round changes no table.
    pub stop_at_fixed_point: bool,
    /// Compare the result with [`reference_blocks`].
    pub verify: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub round: usize,
    pub vertex: usize,
    pub port_paths: Vec<Option<Vec<usize>>>,
}

/// A pair inside a 2-connected graph for which fewer than two independent
/// paths were found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolLimitation {
    pub i: usize,
    pub j: usize,
    pub x: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub agrees: bool,
    /// Normalized reference decomposition.
    pub reference: BlockDecomposition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDetection {
    pub decomposition: BlockDecomposition,
    pub state: SimState,
    /// Vertices no pair rule put in a block or on a path.
    pub unclassified: Vec<usize>,
    pub limitations: Vec<ProtocolLimitation>,
    pub trace: Vec<TraceRecord>,
    pub verification: Option<Verification>,
}

/// Runs the full protocol: `n` rounds, pair counting, then classification.
pub fn run_block_detection(g: &Graph, options: SimOptions) -> Result<BlockDetection> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "block detection needs at least 2 vertices".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut state = SimState::new(g);
    let mut trace = Vec::new();
    while state.round < n {
        let next = step_round(&state, g)?;
        let fixed = next.tables == state.tables;
        state = next;
        if options.trace {
            trace.extend(state.tables.iter().map(|t| TraceRecord {
                round: state.round,
                vertex: t.owner,
                port_paths: t.port_paths.clone(),
            }));
        }
        if fixed && options.stop_at_fixed_point {
            state.finalize();
            break;
        }
    }
    let x = state
        .x_matrix
        .clone()
        .expect("finalized after the last round");
    let (decomposition, unclassified) = classify(g, &x);
    let limitations = if biconnected_components(g).len() == 1 && n >= 3 {
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| x[i][j] < 2)
            .map(|(i, j)| ProtocolLimitation { i, j, x: x[i][j] })
            .collect()
    } else {
        Vec::new()
    };
    let verification = if options.verify {
        let reference = reference_blocks(g)?.normalized(g);
        Some(Verification {
            agrees: decomposition.normalized(g) == reference,
            reference,
        })
    } else {
        None
    };
    Ok(BlockDetection {
        decomposition,
        state,
        unclassified,
        limitations,
        trace,
        verification,
    })
}

/// Pair rules over `i < j`, then merging of tentative blocks. Tentative
/// blocks are named after a pivot vertex and merge when they share a member;
/// merged blocks with fewer than three vertices hold no cycle and are
/// demoted to path vertices.
fn classify(g: &Graph, x: &[Vec<usize>]) -> (BlockDecomposition, Vec<usize>) {
    let n = g.vertex_count();
    let mut tentative: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut on_path = vec![false; n];
    for i in 0..n {
        let di = g.degree(i);
        for j in i + 1..n {
            let dj = g.degree(j);
            match x[i][j] {
                0 => {}
                1 if di == 2 && dj == 1 => {}
                1 if di > 2 && dj <= 2 => tentative[i].push(i),
                1 if di > 2 && dj > 2 => {
                    tentative[i].push(i);
                    tentative[j].push(j);
                }
                c if c > 1 => tentative[i].extend([i, j]),
                1 if di == 2 && dj == 2 => {
                    on_path[i] = true;
                    on_path[j] = true;
                }
                _ => {}
            }
        }
    }
    let mut blocks = Vec::new();
    for b in merge_overlapping(tentative, n) {
        if b.len() >= 3 {
            blocks.push(b);
        } else {
            for v in b {
                on_path[v] = true;
            }
        }
    }
    let mut in_block = vec![false; n];
    for &v in blocks.iter().flatten() {
        in_block[v] = true;
    }
    let path_vertices: Vec<usize> = (0..n).filter(|&v| on_path[v] && !in_block[v]).collect();
    let unclassified = (0..n).filter(|&v| !on_path[v] && !in_block[v]).collect();
    (
        BlockDecomposition::assemble(g, blocks, &path_vertices),
        unclassified,
    )
}
