use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },
    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("density matrix trace is {trace}, expected 1")]
    BadTrace { trace: f64 },
    #[error("invalid subsystem layout: {0}")]
    InvalidSubsystems(String),
    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),
    #[error("operator form needs a full-rank state (support rank {rank} of {dim}); use the difference form")]
    RankDeficient { rank: usize, dim: usize },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("eigenvalue {energy:e} is a zero mode; the supercharge annihilates it")]
    ZeroMode { energy: f64 },
    #[error("requested {requested} levels but only {available} are available")]
    TooManyLevels { requested: usize, available: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
