use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("map of degree {map_degree} sends `{source_label}` (degree {source_degree}) to a term of degree {target_degree}")]
    DegreeMismatch {
        source_label: String,
        source_degree: i64,
        target_degree: i64,
        map_degree: i64,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("d² ≠ 0: d(d({witness})) = {value}")]
    DSquaredNonzero { witness: String, value: String },

    #[error("coalgebra is not conilpotent within weight {bound}: witness `{witness}`")]
    NotConilpotent { witness: String, bound: usize },

    #[error("series word of length {length} exceeds truncation N = {max_weight}")]
    Truncation { length: usize, max_weight: usize },

    #[error("rewriting exceeded its budget of {budget} steps")]
    NonTerminating { budget: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("{0}")]
    Io(String),

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Errors caused by the invocation or the input files rather than by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::Io(_) | Error::Usage(_) | Error::UnknownLabel(_) | Error::DuplicateLabel(_)
        )
    }
}
