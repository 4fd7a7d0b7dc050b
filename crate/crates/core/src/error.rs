use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("invalid vertex split: {0}")]
    InvalidSplit(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error(
        "chord {chord} creates a cycle of length {cycle_len} (longest allowed is {bound}): {cycle:?}"
    )]
    LongestCycleViolation {
        chord: usize,
        cycle_len: usize,
        bound: usize,
        cycle: Vec<usize>,
    },

    #[error("search budget `{budget}` exceeded (limit {limit})")]
    BudgetExceeded { budget: &'static str, limit: u64 },

    #[error("simulation already ran all {0} rounds")]
    RoundsExhausted(usize),

    #[error("simulation unfinished: round {round} of {total}")]
    Unfinished { round: usize, total: usize },
}
