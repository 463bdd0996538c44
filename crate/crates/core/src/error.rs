use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("no transactions")]
    NoTransactions,

    #[error("duplicate attribute name: {0:?}")]
    DuplicateAttribute(String),

    #[error("unknown item id: {0}")]
    UnknownItem(u32),

    #[error("item id {0} appears more than once in a signed itemset")]
    DuplicateLiteral(u32),

    #[error("antecedent and consequent must be disjoint")]
    OverlappingSets,

    #[error("antecedent and consequent must be nonempty")]
    EmptySide,

    #[error("undefined confidence: antecedent never occurs")]
    UndefinedConfidence,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("database too large for exhaustive checking: {0}")]
    TooLargeForOracle(String),
}
