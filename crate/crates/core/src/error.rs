use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge index {index} out of range for a graph with {edge_count} edges")]
    InvalidEdge { index: usize, edge_count: usize },

    #[error("edge ({a}, {b}) references a vertex outside 0..{vertex_count}")]
    InvalidEndpoint { a: usize, b: usize, vertex_count: usize },

    #[error("cannot contract loop edge {0}")]
    ContractLoop(usize),

    #[error("label count t must be at least 1")]
    ZeroLabels,

    #[error("edge subset contains a cycle")]
    CyclicSubset,

    #[error("subforest bound exceeded: more than {limit} forests")]
    ForestBound { limit: u64 },

    #[error("monomial basis bound exceeded: {size} > {limit}")]
    BasisBound { size: u64, limit: u64 },

    #[error("vertex subset bound exceeded: {vertices} vertices > {limit}")]
    SubsetBound { vertices: usize, limit: usize },

    #[error("recursion budget of {limit} calls exhausted")]
    BudgetExceeded { limit: u64 },

    #[error("sample point {0} is a pole or degenerate point of the identity")]
    ForbiddenSample(String),

    #[error("cannot evaluate a negative power at zero")]
    ZeroPoint,

    #[error("coefficient at degree {degree} is not a nonnegative machine integer")]
    BadCoefficient { degree: i64 },

    #[error("quotient has nonzero dimension {dim} in degree {degree}, above the expected top degree {top}")]
    DegreeOverflow { degree: usize, dim: u64, top: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("recovery failed: {0}")]
    Recovery(#[from] RecoveryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecoveryError {
    #[error("hilbert function is identically zero")]
    ZeroHilbert,

    #[error("hilbert function was computed for t = {found}, expected t = {expected}")]
    LabelMismatch { expected: u32, found: u32 },

    #[error("top nonzero degree {top} is not divisible by t = {t}")]
    TopDegreeNotDivisible { top: usize, t: u32 },

    #[error("top nonzero degree {top} is below the padded length {len}; loops are not supported")]
    LoopsPresent { top: usize, len: usize },

    #[error("need t >= n for recovery (t = {t}, n = {n})")]
    TooFewLabels { t: u32, n: usize },

    #[error("stripping produced a negative coefficient at degree {degree}")]
    NegativeResidual { degree: u32 },

    #[error("recovered forest size {size} is not below n = {n}")]
    ForestTooLarge { size: u32, n: usize },
}
