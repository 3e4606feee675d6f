use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (mixed fields, wrong shapes, non-homogeneous data, ...).
    #[error("input error: {0}")]
    Input(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },

    /// The generators were not certified to be R+-primary within the search bound.
    #[error("ideal is not primary (no degree N <= {bound} with R_N contained in I)")]
    NotPrimary { bound: i64 },

    /// A finite search ran out before it could decide.
    #[error("undetermined: {0}")]
    Undetermined(String),

    #[error("Cech truncation did not stabilize for twist {twist} within N <= {bound}")]
    StabilizationFailed { twist: i64, bound: i64 },

    /// A self-check failed; this always indicates a bug or violated precondition.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// True for errors caused by the caller's data rather than an inconclusive search.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Input(_) | Error::Syntax { .. } | Error::UnknownVariable { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
