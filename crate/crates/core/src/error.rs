use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("requested dimension {dim} exceeds the dense-matrix limit {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },

    #[error(
        "fold-4 construction on a {dim}-dimensional system exceeds the cap {cap}; \
         override the cap to force it"
    )]
    SizeCapExceeded { dim: usize, cap: usize },

    #[error("subsystems {i} and {j} have unequal dimensions {di} and {dj}")]
    UnequalSubsystems { i: usize, j: usize, di: usize, dj: usize },

    #[error("operator is not unitary: max |U†U - I| entry is {deviation:.3e} (tol {tol:.3e})")]
    NotUnitary { deviation: f64, tol: f64 },

    #[error("zero operator has no Hilbert-Schmidt direction")]
    ZeroOperator,

    #[error("state vector has norm {norm} (must be 1 within {tol:.0e})")]
    NotNormalized { norm: f64, tol: f64 },

    #[error("Schmidt rank {rank} exceeds 2; concurrence is defined only on the two-term class")]
    RankAboveTwo { rank: usize },

    #[error("degenerate two-term decomposition: factors on side {side} are proportional")]
    DegenerateDecomposition { side: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
