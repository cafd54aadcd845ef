use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("pattern needs letter {needed} but the alphabet only has 1..={n}")]
    AlphabetOverflow { needed: usize, n: usize },

    #[error("the tensor has no nonzero terms")]
    EmptyTensor,

    /// The brute-force kernel would need more basis monomials than allowed.
    #[error("brute force needs {required} basis monomials, budget is {budget}")]
    Resource { required: u128, budget: u128 },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
