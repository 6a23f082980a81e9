use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("network has a directed cycle")]
    CyclicGraph,
    #[error("terminal {terminal} is not reachable from source {source_node}")]
    NotConnected { source_node: usize, terminal: usize },
    #[error("source and terminal are the same node ({0})")]
    SourceEqualsTerminal(usize),
    #[error("node index {index} out of range for {node_count} nodes")]
    NodeOutOfRange { index: usize, node_count: usize },
    #[error("network must have at least one node")]
    NoNodes,
    #[error("{edges} edges exceed the supported maximum of {max}")]
    TooManyEdges { edges: usize, max: usize },
    #[error("inclusion-exclusion over {paths} paths exceeds the budget of {budget} terms")]
    PathBudgetExceeded { paths: usize, budget: u64 },
    #[error("inclusion-exclusion over {cuts} minimal cuts exceeds the budget of {budget} terms")]
    CutBudgetExceeded { cuts: usize, budget: u64 },
    #[error("expected {expected} link probabilities, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("link {index} has probability {value} outside [0, 1]")]
    InvalidProbability { index: usize, value: String },
    #[error("mean SNR must be positive, got {0}")]
    NonPositiveSnr(f64),
    #[error("outage count {outages} exceeds block size {size}")]
    InvalidCount { size: usize, outages: usize },
    #[error("partition does not match the edge set: {0}")]
    PartitionMismatch(String),
    #[error("correlation coefficient {0} outside [0, 1]")]
    InvalidRho(String),
    #[error("minimal cut-sets are not pairwise disjoint")]
    CutsNotDisjoint,
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// True for errors caused by an exhausted enumeration budget.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::TooManyEdges { .. }
                | Error::PathBudgetExceeded { .. }
                | Error::CutBudgetExceeded { .. }
        )
    }
}
