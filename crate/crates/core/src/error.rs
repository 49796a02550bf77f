use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The function has a pole at the requested point.
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    /// An argument lies outside the documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative procedure (quadrature, series) failed to settle.
    #[error("{what} did not converge: {detail}")]
    Convergence { what: &'static str, detail: String },

    /// The m-sum of the improved expansion was cut off too early.
    #[error("truncated m-sum tail {bound} exceeds tolerance {tolerance}; extend the schedule")]
    Tail { bound: String, tolerance: String },

    /// A subtraction cancelled more digits than the working precision can absorb.
    #[error("cancellation of {lost_digits} digits exceeds the budget of {budget} digits")]
    Precision { lost_digits: u32, budget: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn pole(function: &'static str, at: impl std::fmt::Display) -> Self {
        Error::Pole {
            function,
            at: at.to_string(),
        }
    }

    pub(crate) fn convergence(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Convergence {
            what,
            detail: detail.into(),
        }
    }
}
