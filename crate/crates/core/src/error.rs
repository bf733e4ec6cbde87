use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is zero")]
    Zero(&'static str),
    #[error("{0} is not a prime")]
    NotPrime(String),
    #[error("minimal polynomial must be monic of degree >= 1")]
    NonMonic,
    #[error("minimal polynomial is not squarefree")]
    NotSquarefree,
    #[error("minimal polynomial is reducible: it has the factor {0}")]
    Reducible(String),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("element length {got} does not match field degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("field is not totally real")]
    NotTotallyReal,
    #[error("theta^2 is not totally negative")]
    NotTotallyNegative,
    #[error("matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("gram matrix is not hermitian at ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("form is degenerate")]
    Degenerate,
    #[error("diagonal entry {0} is not fixed by the involution")]
    NonFixedDiagonal(usize),
    #[error("signature ({0}, {1}) is not of the required shape")]
    SignatureShape(usize, usize),
    #[error("signature does not sum to the rank")]
    InconsistentSignature,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Whether the error reflects a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
