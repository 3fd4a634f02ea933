use thiserror::Error;

/// Everything that can go wrong across the numeric and state-handling layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "matrix is not Hermitian: deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    NonHermitianInput { deviation: f64, tolerance: f64 },

    #[error(
        "matrix is not symmetric: deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    NonSymmetricInput { deviation: f64, tolerance: f64 },

    #[error("iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix entry at ({row},{col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("parameter out of range: {0}")]
    OutOfRangeParameter(String),

    #[error("state trace must be 1 (got {0:.12e})")]
    InvalidTrace(f64),

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error("requested rank {rank} exceeds state dimension {dim}")]
    RankTooLarge { rank: usize, dim: usize },

    #[error("requested {terms} ensemble terms but party A has dimension {dim}")]
    TooManyTerms { terms: usize, dim: usize },

    #[error("party A must be a qubit, got dimension {0}")]
    ANotQubit(usize),

    #[error("the drive commutes with the state: no information about the phase")]
    ZeroInformation,

    #[error("state is not symmetric under site swaps (deviation {deviation:.3e})")]
    NotSymmetric { deviation: f64 },

    #[error("malformed state file: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
