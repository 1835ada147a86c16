use thiserror::Error;

/// Errors raised by the library. Negative mathematical outcomes (a failed
/// check, an exhausted search) are report content, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("table has no entry for P^{k}({generator})")]
    IncompleteTable { generator: String, k: u32 },

    #[error("search space of about {base}^{exponent} coefficient tuples exceeds the cap of {cap}")]
    SearchSpaceTooLarge { base: u32, exponent: usize, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
