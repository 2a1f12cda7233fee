use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violates the precondition of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("domain error: {a} is not invertible modulo {modulus}")]
    NotInvertible { a: u128, modulus: u128 },

    /// The requested work would leave the supported integer range.
    #[error("bound error: {0}")]
    Bound(String),

    #[error("bound error: integer overflow in {0}")]
    Overflow(&'static str),

    /// A mathematical invariant failed; indicates a bug, never bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn bound(msg: impl Into<String>) -> Self {
        Error::Bound(msg.into())
    }

    /// True for the range/overflow family of errors.
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::Bound(_) | Error::Overflow(_))
    }
}
