use thiserror::Error;

/// Errors raised by the word algebra and everything built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    LetterOutOfRange { index: usize, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("word {0} is not cyclically reduced")]
    NotCyclicallyReduced(String),

    #[error("empty word where a nontrivial word is required")]
    EmptyWord,

    #[error("cannot parse word {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("presentation has not been verified to satisfy C'(1/6)")]
    Unverified,

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
