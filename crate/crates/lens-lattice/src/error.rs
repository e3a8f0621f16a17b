use num_bigint::BigInt;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid fraction {p}/{q}: need p > q > 0 with gcd(p, q) = 1")]
    InvalidFraction { p: BigInt, q: BigInt },

    #[error("invalid coefficient string: {0}")]
    InvalidCfString(String),

    #[error("continued-fraction coefficient exceeds the machine range")]
    CoefficientOverflow,

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    #[error("lattice is not positive definite")]
    NotPositiveDefinite,

    #[error("map is not an embedding")]
    NotAnEmbedding,

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("target lattice is not diagonal")]
    NonDiagonalTarget,

    #[error(
        "lens space out of family: the hypothesis requires every coefficient a_i >= 6, got {coeffs:?}"
    )]
    OutOfFamily { coeffs: Vec<i64> },

    #[error("target rank {n} is below the minimal embedding rank {min}")]
    RankTooSmall { n: usize, min: usize },

    #[error("coefficient string requires every a_i >= 3 for the explicit construction, got {coeffs:?}")]
    CoefficientBelowThree { coeffs: Vec<i64> },

    #[error("orthogonal complement does not decompose as expected: {0}")]
    ComplementMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
