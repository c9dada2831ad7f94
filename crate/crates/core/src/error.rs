use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// Inputs are individually valid but incompatible, or violate a
    /// documented precondition.
    #[error("usage error in {op}: {detail}")]
    Usage { op: &'static str, detail: String },

    /// An iteration did not reach its tolerance.
    #[error("{op} did not converge after {iterations} iterations (last residual {residual:e}, contraction factor {factor:e})")]
    NoConvergence {
        op: &'static str,
        iterations: usize,
        residual: f64,
        factor: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}

pub(crate) fn usage(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Usage {
        op,
        detail: detail.into(),
    }
}
