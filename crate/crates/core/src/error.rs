use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("start position must be at least 1 (got 0)")]
    ZeroStart,

    #[error("the Catalan convolution needs n >= 1")]
    EmptyConvolution,

    #[error("path length {length} exceeds the enumeration cap {cap}")]
    TooLarge { length: u64, cap: u64 },

    #[error("expected a path starting at {expected}, got start {found}")]
    WrongStart { expected: u32, found: u32 },

    #[error("operation needs a path with at least {min} right steps")]
    TooFewRightSteps { min: u32 },

    #[error("k must be at least 3 for the first-step partition (got {0})")]
    PartitionStart(u32),

    #[error("not a first-passage path: {0}")]
    NotFirstPassage(String),

    #[error("malformed path {0:?}: expected `<start>:<R|L>...`")]
    PathSyntax(String),

    #[error("probability {0} lies outside [0, 1]")]
    ProbabilityRange(String),

    #[error("malformed probability {0:?}: expected a decimal or `num/den`")]
    ProbabilitySyntax(String),

    #[error("{0} is outside the domain of {1}")]
    Domain(String, &'static str),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("series evaluation cancelled after {terms} terms")]
    Cancelled { terms: usize },
}
