use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor must be at least 1")]
    ZeroConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {0} is not real")]
    NotReal(String),
    #[error("Coxeter label must be at least 2, got {0}")]
    InvalidLabel(u32),
    #[error("cannot parse scalar literal {input:?}: {message}")]
    Literal { input: String, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("graph is not a single cycle")]
    NotACycle,
    #[error("weight function is not legal: {0}")]
    IllegalWeights(String),
    #[error("invalid edge coefficients: {0}")]
    InvalidCoefficients(String),
    #[error("potential at vertex {0} is zero")]
    ZeroPotential(usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("certificate verification failed: {0}")]
    VerificationFailed(String),
    #[error("matrix is not monomial")]
    NonMonomial,
    #[error("entry {0} is not a power of the base")]
    NotAPower(String),
    #[error("exponent sum must be zero, got {0}")]
    NonzeroExponentSum(i64),
    #[error("window {0:?} is not an affine permutation")]
    InvalidWindow(Vec<i64>),
    #[error("element has finite order {0}; an infinite-order element is required")]
    FiniteOrder(u64),
    #[error("cycle must have at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("generalized numbers game unavailable: {0}")]
    GameUnavailable(String),
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
