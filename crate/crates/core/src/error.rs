use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid flag shape: {0}")]
    InvalidShape(String),
    #[error("box ({row}, {col}) is not in the diagram")]
    OutOfDiagram { row: usize, col: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("bipartition is distinguished; no splitting exists")]
    Distinguished,
    #[error("pair carries no weight data")]
    MissingWeights,
    #[error("classification failed: {0}")]
    Classification(String),
    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("coefficient of q^{degree} is not an integer: {value}")]
    NonIntegral { degree: usize, value: String },
    #[error("samples need degree {degree}, above bound {bound}")]
    DegreeExceeded { degree: usize, bound: usize },
    #[error("coefficient overflow")]
    Overflow,
    #[error("rank disagreement between primes: {0:?}")]
    PrimeDisagreement(Vec<(u32, usize)>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("cache error: {0}")]
    Cache(String),
}
