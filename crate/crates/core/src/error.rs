use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed input at line {line}: {message}")]
    MalformedInput { line: usize, message: String },
    #[error("invalid graph operation: {0}")]
    InvalidGraph(String),
    #[error("density undefined: total terminal weight is zero")]
    ZeroWeight,
    #[error("source and target are the same vertex")]
    SameVertex,
    #[error("no two internally vertex-disjoint paths exist")]
    NoTwoDisjointPaths,
    #[error("edge set is not a simple cycle")]
    NotACycle,
    #[error("graph is not 2-vertex-connected")]
    NotTwoConnected,
    #[error("graph has fewer than two terminals")]
    FewerThanTwoTerminals,
    #[error("ear does not improve the cycle density")]
    EarNotImproving,
    #[error("graph has no cycle with positive terminal weight")]
    NoWeightedCycle,
    #[error("cycle has no earring")]
    NoEarring,
    #[error("no cycle with at least two terminals exists")]
    NoNontrivialCycle,
    #[error("no terminal is 2-connected to the root")]
    NoFeasibleTerminal,
    #[error("LP solver failure: {0}")]
    LpNumericalFailure(String),
    #[error("required terminals cannot be 2-connected to the root")]
    Infeasible,
    #[error("iterative rounding found no edge with value at least 1/2")]
    RoundingStall,
    #[error("no window of the merge cycle yields a verified solution")]
    WindowNotFound,
    #[error("instance exceeds the oracle budget: {0}")]
    BudgetExceeded(String),
    #[error("target weight k is not attainable")]
    InfeasibleTarget,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn malformed(line: usize, message: impl Into<String>) -> Self {
        Error::MalformedInput { line, message: message.into() }
    }
}
