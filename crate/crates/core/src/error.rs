use thiserror::Error;

/// Validation failures for candidates, rankings, profiles and instances.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("candidate set must not be empty")]
    NoCandidates,
    #[error("invalid candidate label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate candidate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown candidate {0:?}")]
    UnknownCandidate(String),
    #[error("candidate index {index} out of range for {m} candidates")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("ranking is not a permutation of {m} candidates: {reason}")]
    InvalidRanking { m: usize, reason: String },
    #[error("ranking covers {got} candidates, expected {expected}")]
    RankingSizeMismatch { expected: usize, got: usize },
    #[error("weights must be at least 1")]
    ZeroWeight,
    #[error("total weight exceeds the supported capacity of {cap}")]
    WeightCapacity { cap: i64 },
    #[error("weight matrix must be {m}x{m}")]
    MatrixShape { m: usize },
}

/// Failures raised by the manipulation solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("manipulator weight {0} exceeds capacity")]
    Capacity(i64),
    /// A proven invariant failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("search space of {space} assignments exceeds the oracle limit of {limit}")]
    TooLarge { space: u128, limit: u128 },
}

/// An election file diagnostic, tied to a 1-based line number when one applies.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: Some(line),
            message: message.into(),
        }
    }

    pub(crate) fn global(message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            message: message.into(),
        }
    }
}
