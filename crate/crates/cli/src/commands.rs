//! Command implementations. Each returns a serializable document; `main`
//! decides where it goes.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use treepack_core::blocks::BlockDecomposition;
use treepack_core::claims::{reproduce, Report};
use treepack_core::heuristics::{pack_t1, pack_t2};
use treepack_core::oracle::Overlap;
use treepack_core::sim::{run_block_detection, ProtocolLimitation, SimOptions, TraceRecord};
use treepack_core::{
    max_packing, min_cover, reference_blocks, validate_packing, validate_solution, CoverSolution,
    Graph, OracleBudget, PackingSolution, TreeEmbedding,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackMode {
    Heuristic,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackOutput {
    pub k: usize,
    pub mode: PackMode,
    pub size: usize,
    pub valid: bool,
    /// Level-order images of `T_k`.
    pub embeddings: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub invalid_embeddings: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overlap: Option<Overlap>,
}

impl PackOutput {
    /// Rebuilds the packing for re-validation.
    pub fn solution(&self) -> Result<PackingSolution> {
        let embeddings = self
            .embeddings
            .iter()
            .map(|im| TreeEmbedding::new(self.k, im.clone()))
            .collect::<Result<_, _>>()?;
        Ok(PackingSolution {
            k: self.k,
            embeddings,
        })
    }
}

pub fn cmd_pack(g: &Graph, k: usize, mode: PackMode, budget: &OracleBudget) -> Result<PackOutput> {
    let p = match mode {
        PackMode::Oracle => max_packing(g, k, budget)?,
        PackMode::Heuristic => match k {
            1 => pack_t1(g),
            2 => pack_t2(g),
            _ => bail!("heuristic packing supports k = 1 or 2 (got {k})"),
        },
    };
    let report = validate_packing(g, k, &p);
    Ok(PackOutput {
        k,
        mode,
        size: p.size(),
        valid: report.packing_ok(),
        embeddings: p
            .embeddings
            .iter()
            .map(|e| e.image_vertices().to_vec())
            .collect(),
        invalid_embeddings: report.invalid_embeddings,
        overlap: report.overlap,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverOutput {
    pub k: usize,
    pub size: usize,
    pub valid: bool,
    pub vertices: Vec<usize>,
    /// Size of a maximum packing found alongside, for the duality check.
    pub packing_size: usize,
    pub weak_duality: bool,
}

pub fn cmd_cover(g: &Graph, k: usize, budget: &OracleBudget) -> Result<CoverOutput> {
    let c: CoverSolution = min_cover(g, k, budget)?;
    let p = max_packing(g, k, budget)?;
    let report = validate_solution(g, k, &p, &c)?;
    Ok(CoverOutput {
        k,
        size: c.size(),
        valid: report.cover_ok(),
        vertices: c.vertices,
        packing_size: p.size(),
        weak_duality: report.weak_duality(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlocksMode {
    Reference,
    Simulated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlocksOutput {
    pub mode: BlocksMode,
    #[serde(flatten)]
    pub decomposition: BlockDecomposition,
}

pub fn cmd_blocks(g: &Graph, mode: BlocksMode) -> Result<BlocksOutput> {
    let decomposition = match mode {
        BlocksMode::Reference => reference_blocks(g)?,
        BlocksMode::Simulated => run_block_detection(g, SimOptions::default())?.decomposition,
    };
    Ok(BlocksOutput {
        mode,
        decomposition,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulateOutput {
    pub rounds: usize,
    pub unclassified: Vec<usize>,
    pub agrees_with_reference: bool,
    pub limitations: Vec<ProtocolLimitation>,
    #[serde(flatten)]
    pub decomposition: BlockDecomposition,
}

pub fn cmd_simulate(g: &Graph, trace: bool) -> Result<(SimulateOutput, Vec<TraceRecord>)> {
    let d = run_block_detection(
        g,
        SimOptions {
            trace,
            verify: true,
            ..Default::default()
        },
    )?;
    let agrees = d.verification.as_ref().is_some_and(|v| v.agrees);
    Ok((
        SimulateOutput {
            rounds: d.state.round,
            unclassified: d.unclassified,
            agrees_with_reference: agrees,
            limitations: d.limitations,
            decomposition: d.decomposition,
        },
        d.trace,
    ))
}

/// Trace as JSON lines, one record per round and vertex.
pub fn trace_lines(trace: &[TraceRecord]) -> Result<String> {
    let mut out = String::new();
    for r in trace {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn cmd_reproduce(budget: &OracleBudget, seed: u64) -> Report {
    let mut report = reproduce(budget);
    report.seed = seed;
    report
}

/// Plain-text table of a report, for terminals.
pub fn render_table(report: &Report) -> String {
    let mut out = format!(
        "{:<24} {:>5} {:>11} {:>14} {:>14} {:>9}\n",
        "claim", "kind", "published", "computed", "verdict", "ms"
    );
    for c in &report.claims {
        let computed = match (c.computed_alpha, c.computed_beta) {
            (Some(a), Some(b)) => format!("({a},{b})"),
            _ => "-".into(),
        };
        let verdict = serde_json::to_value(c.verdict)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned));
        out.push_str(&format!(
            "{:<24} {:>5} {:>11} {:>14} {:>14} {:>9}\n",
            c.claim_id,
            format!("{:?}", c.kind).to_lowercase(),
            format!("({},{})", c.paper_alpha, c.paper_beta),
            computed,
            verdict.unwrap_or_default(),
            c.runtime_ms
        ));
    }
    let t = &report.totals;
    out.push_str(&format!(
        "{} claims: {} confirmed, {} refuted, {} out of budget; {} checks, {} failed; {} hard failures\n",
        t.claims, t.confirmed, t.refuted, t.out_of_budget, t.checks, t.checks_failed, t.hard_failures
    ));
    out
}

pub fn to_toml<T: Serialize>(value: &T) -> Result<String> {
    toml::to_string(value).context("serializing report")
}
