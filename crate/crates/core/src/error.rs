use thiserror::Error;

/// Errors raised by the numerical kernels and model constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e}, allowed {allowed:.3e})")]
    NotHermitian { asymmetry: f64, allowed: f64 },

    #[error("eigendecomposition failed to converge")]
    EigenFailure,

    #[error("degenerate angle: both arctangent arguments vanish (omega={omega}, g={g}, k={k})")]
    DegenerateAngle { omega: f64, g: f64, k: f64 },

    #[error("singular point: g^2 + omega^2 - 2 g omega cos k = 0 (omega={omega}, g={g}, k={k})")]
    SingularPoint { omega: f64, g: f64, k: f64 },

    #[error("degenerate parameters: (omega, g) = ({omega}, {g})")]
    DegenerateParameters { omega: f64, g: f64 },

    #[error("spectral gap {gap:.3e} below tolerance {tolerance:.3e}; state derivative unreliable")]
    NearDegenerate { gap: f64, tolerance: f64 },

    #[error("g={g} >= omega={omega}: squeezing parameter is complex outside the normal phase")]
    OutOfPhase { omega: f64, g: f64 },

    #[error("state norm {norm} differs from 1 by more than {tolerance:.1e}")]
    Unnormalized { norm: f64, tolerance: f64 },

    #[error("QFI matrix is not positive semi-definite: {0}")]
    NotPositiveSemidefinite(String),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("quadrature node {index} (g={g}): {source}")]
    Node {
        index: usize,
        g: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("dimension {dim} exceeds the dense-path cap {cap}")]
    TooLarge { dim: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
