use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be odd, got {0}")]
    EvenDimension(usize),
    #[error("dimension must be at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },
    #[error("state vector is zero or non-finite")]
    DegenerateVector,
    #[error("mixture weights must be nonnegative and sum to 1 (sum = {sum})")]
    InvalidWeights { sum: f64 },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix trace is {trace}, expected 1")]
    BadTrace { trace: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invariant check failed: {check}: {detail}")]
    InvariantViolation { check: String, detail: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
