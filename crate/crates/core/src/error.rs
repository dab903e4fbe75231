use thiserror::Error;

use crate::base::cycle::NegativeCycle;

/// Structural problems with a graph.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("negative self-loop at vertex {0}")]
    NegativeSelfLoop(usize),
    #[error("edge {edge} references vertex {vertex}, but n = {n}")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge {0} has a non-finite length")]
    NonFiniteLength(usize),
}

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing `p sp <n> <m>` header")]
    MissingHeader,
    #[error("header declares {declared} arcs but {found} were read")]
    InconsistentHeader { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),
}

/// Failures of the solvers and their building blocks.
#[derive(Debug, Clone, Error)]
pub enum SolveError {
    #[error("negative cycle found (length {})", .0.length)]
    CycleFound(NegativeCycle),
    #[error("{stage}: randomized step failed verification {attempts} times")]
    RetryBudgetExhausted { stage: &'static str, attempts: usize },
    #[error("negative reach has {reach} vertices, limit is {limit}")]
    ReachTooLarge { reach: usize, limit: usize },
    #[error("no sparse distance estimates for level {0}")]
    MissingEstimates(usize),
    #[error("potential does not neutralize the subgraph")]
    NotNeutralized,
    #[error("{0} negative vertices exceeds the enumeration guard")]
    TooLarge(usize),
    #[error("remote set extraction found {found} of {target} vertices")]
    ExtractionFailed { found: usize, target: usize },
    #[error("edge {0} is negative but the routine needs nonnegative lengths")]
    NegativeEdgeEncountered(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<NegativeCycle> for SolveError {
    fn from(c: NegativeCycle) -> Self {
        SolveError::CycleFound(c)
    }
}
