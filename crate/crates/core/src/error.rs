use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("zero table is empty")]
    EmptyTable,
    #[error("height {requested} exceeds table coverage (max available T = {available})")]
    Coverage { requested: f64, available: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate tau: {0}")]
    DegenerateTau(String),
    #[error("ill-conditioned evaluation at distance {distance:e}: {what}")]
    IllConditioned { what: String, distance: f64 },
    #[error("rule inapplicable: {0}")]
    RuleInapplicable(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("precision error: {0}")]
    Precision(String),
    #[error("csv error: {0}")]
    Csv(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
