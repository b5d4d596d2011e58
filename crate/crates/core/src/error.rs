use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse ring spec {0:?}: {1}")]
    RingParse(String, String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("ring {0} is not a field")]
    NotAField(String),
    #[error("the given elements do not form a basis")]
    NotABasis,
    #[error("element {0} does not belong to ring {1}")]
    BadElement(String, String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular over the ring")]
    Singular,
    #[error("matrix has nonzero trace, not in sl_n")]
    NonzeroTrace,
    #[error("subalgebra is not closed under the bracket")]
    NotClosed,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
