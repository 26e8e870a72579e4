use thiserror::Error;

/// Errors raised by the function algebra, the simulator and the search drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("arity {arity} exceeds the cap of {cap} variables for {what}")]
    Capacity {
        arity: usize,
        cap: usize,
        what: &'static str,
    },

    #[error("variable x{index} out of range for a function of {arity} variables")]
    VarOutOfRange { index: usize, arity: usize },

    #[error("input {input:#x} has bits set above the function's {arity} variables")]
    InputOutOfRange { input: u64, arity: usize },

    #[error("register width must be at least 1")]
    EmptyRegister,

    #[error("state vector has length {found}, expected {expected}")]
    StateLength { expected: usize, found: usize },

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("match count {matches} outside 1..={items}")]
    MatchCount { matches: u64, items: u64 },

    #[error("search budget must have positive caps")]
    InvalidBudget,

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid generator request: {0}")]
    InvalidRequest(String),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
