use thiserror::Error;

/// Errors raised by the geometry, quantum and detector layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("{what} is not symmetric (defect {defect:e})")]
    Asymmetric { what: &'static str, defect: f64 },

    #[error(
        "degenerate metric: induced spatial metric is singular (point outside the Fermi bound?)"
    )]
    DegenerateMetric,

    #[error("induced spatial metric is not positive definite")]
    NotPositiveDefinite,

    #[error("empty proper-time sample grid")]
    EmptySamples,

    #[error("proper time {tau} outside the trajectory range [{min}, {max}]")]
    OutOfRange { tau: f64, min: f64, max: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("wave functions live on different grids")]
    GridMismatch,

    #[error("operator of dimension {found} does not match grid interior dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("requested {requested} eigenpairs from a {dimension}-dimensional operator")]
    TooManyEigenpairs { requested: usize, dimension: usize },

    #[error("operator is not Hermitian (defect {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver failed to converge")]
    EigenSolver,

    #[error("Hamiltonian correction requires a frame that is constant in proper time")]
    TimeVaryingFrame,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
