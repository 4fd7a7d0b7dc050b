//! Packing and covering perfect binary trees in graphs.
//!
//! The crate covers the whole pipeline: graph primitives, `T_k` embedding
//! enumeration, the graph families used in experiments, an exact α/β oracle,
//! a round-based simulation of block detection, and the `T_1`/`T_2` packing
//! heuristics built on top of it.

pub mod blocks;
pub mod claims;

pub mod constructions;
pub mod cycle;
pub mod error;
pub mod graph;
pub mod heuristics;

pub mod minor;
pub mod oracle;
pub mod random;
pub mod sim;

pub mod tree;

pub use blocks::{reference_blocks, BlockDecomposition, PathSegment};
pub use constructions::{canonical_g3, FamilySpec};
pub use cycle::{longest_cycle, CycleWitness, SearchBudget};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSplitSpec};
pub use minor::has_clique_minor;
pub use oracle::{
    max_packing, min_cover, validate_packing, validate_solution, CoverSolution, OracleBudget,
    PackingSolution, ValidationReport,
};
pub use tree::{enumerate_embeddings, TreeEmbedding, TreePattern};
