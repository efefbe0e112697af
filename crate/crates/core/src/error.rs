use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("polynomial is not homogeneous (term degrees {found:?})")]
    NonHomogeneous { found: Vec<u32> },

    #[error("variable set mismatch: {0}")]
    VariableMismatch(String),

    #[error("invalid variable set: {0}")]
    InvalidVariables(String),

    #[error("not a binary form: {0}")]
    NotBinary(String),

    #[error("{what} = {value} is out of range {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("the zero polynomial has no associated algebra")]
    ZeroPolynomial,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("size guard: {0}")]
    Guard(String),

    #[error("not a Perazzo form: {0}")]
    NotPerazzo(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(what: &'static str, value: impl Into<i64>, range: impl Into<String>) -> Error {
    Error::OutOfRange {
        what,
        value: value.into(),
        range: range.into(),
    }
}
