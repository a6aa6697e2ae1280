use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("letter id {0} is not in the alphabet")]
    UnknownLetter(u8),

    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("cannot parse word {input:?}: {reason}")]
    WordSyntax { input: String, reason: String },

    #[error("duplicate word {0}")]
    DuplicateWord(String),

    #[error("words {0} and {1} are not dichotomous")]
    NotDichotomous(String, String),

    #[error("invalid argument: {0}")]
    Usage(String),

    /// The input does not satisfy the hypotheses of a classifier.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Valid input that does not fit the forced template.
    #[error("template mismatch: {0}")]
    TemplateMismatch(String),

    #[error("invalid tiling: {0}")]
    Tiling(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A computed result contradicts a proven property of the objects involved.
    #[error("defect: {0}")]
    Defect(String),
}

pub type Result<T> = std::result::Result<T, Error>;
