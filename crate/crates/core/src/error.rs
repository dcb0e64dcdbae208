use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the set where a formula is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A physical side condition of the platoon model is violated.
    #[error("constraint violation: {0}")]
    Constraint(String),

    /// A parameter set or scenario fails its own invariants.
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range for {len} entries")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    /// No candidate satisfies the requested bound.
    #[error("infeasible: {reason} (best violation {best_violation:.6})")]
    Infeasible { reason: String, best_violation: f64 },

    /// A dense linear solve failed.
    #[error("singular system of dimension {dim} (condition estimate {condition:.3e})")]
    Singular { dim: usize, condition: f64 },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }
}

pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, actual })
    }
}

pub(crate) fn check_index(index: usize, len: usize) -> Result<()> {
    if index < len {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, len })
    }
}
