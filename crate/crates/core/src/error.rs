use thiserror::Error;

/// Errors produced by model evaluation, synthesis and measurement.
#[derive(Error, Debug)]
pub enum Error {
    /// A parameter violates its documented range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A closed form was evaluated outside its validity region.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two planes that must share dimensions do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },

    /// A statistic was requested over an empty pixel set.
    #[error("empty valid region")]
    EmptyRegion,

    /// Requested motion leaves the generated canvas.
    #[error("motion exceeds canvas margin: needs {needed} px, margin is {margin} px")]
    MotionOutOfMargin { needed: usize, margin: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("metadata error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
