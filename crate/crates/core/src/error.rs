use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimTooLarge { dim: usize, max: usize },

    #[error("input is a permutation; replacement words only produce singular maps")]
    PermutationalInput,

    #[error("relation context mismatch")]
    ContextMismatch,

    #[error("sequence space {base}^{dim} is too large")]
    SpaceTooLarge { dim: usize, base: usize },

    #[error("closure exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("budget of {budget} evaluations exceeded (needed {needed})")]
    BudgetExceeded { budget: u64, needed: u128 },

    #[error("unbound variable x{0}")]
    UnboundVariable(usize),

    #[error("uninterpreted relation symbol R{0}")]
    UninterpretedSymbol(usize),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("malformed algebra: {0}")]
    MalformedAlgebra(String),

    #[error("representation check failed: {0}")]
    BadRepresentation(String),

    #[error("internal failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
