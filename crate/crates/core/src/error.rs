use thiserror::Error;

use crate::quadrature::QuadResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument out of domain ({detail})")]
    Domain { function: &'static str, detail: String },

    /// The subdivision budget ran out before the error target was met. The
    /// best estimate is carried along so callers can still use it.
    #[error("quadrature did not converge: {0}")]
    NonConvergence(QuadResult),

    #[error("integrand is not finite at x = {x:e}")]
    NonFiniteIntegrand { x: f64 },

    #[error("shell (n={n}, l={l}) is not supported: {reason}")]
    UnsupportedShell { n: u32, l: u32, reason: &'static str },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { function, detail: detail.into() }
    }

    /// Best available quadrature estimate, if this error carries one.
    pub fn best_estimate(&self) -> Option<QuadResult> {
        match self {
            Error::NonConvergence(r) => Some(*r),
            _ => None,
        }
    }
}
