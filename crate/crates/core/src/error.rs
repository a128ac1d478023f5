use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot invert the zero quaternion")]
    ZeroQuaternion,

    #[error("state has no nonzero amplitude")]
    ZeroState,

    #[error("state norm {norm} deviates from 1 (pass the normalize flag to rescale)")]
    NotNormalized { norm: f64 },

    #[error("non-finite amplitude in input")]
    NonFinite,

    #[error("correlated vector {which} has zero norm")]
    ZeroVector { which: &'static str },

    #[error("correlated vector {which} has norm {norm}, expected 1")]
    VectorNotNormalized { which: &'static str, norm: f64 },

    #[error("correlated vectors must share a dimension ≥ 1 (got {left} and {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("branch weights |mu|²+|nu|² = {total}, expected 1")]
    BranchWeights { total: f64 },

    #[error("concurrence {0} lies outside [0, 1]")]
    ConcurrenceOutOfRange(f64),

    #[error("Bloch angles out of range: theta={theta}, phi={phi}")]
    BlochAngles { theta: f64, phi: f64 },

    #[error("invalid sample specification: {0}")]
    SampleSpec(String),

    #[error("unknown output format {0:?} (expected csv or json)")]
    UnknownFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
