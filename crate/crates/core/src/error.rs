use thiserror::Error;

/// Errors produced by every numerical routine in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid endpoint exponent {0} (must be > -1)")]
    InvalidExponent(f64),

    #[error(
        "quadrature did not converge: estimate {estimate:e} > tol {tol:e} after {nodes} nodes"
    )]
    NonConvergence {
        estimate: f64,
        tol: f64,
        nodes: usize,
    },

    #[error("no sign change on [{lo}, {hi}]: g(lo) = {g_lo:e}, g(hi) = {g_hi:e}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error("root finder exceeded {0} iterations")]
    MaxIterations(usize),

    #[error("series converges too slowly: {0}")]
    SlowConvergence(String),

    #[error("second derivative is singular at y = {0}")]
    SingularPoint(f64),

    #[error("identity mismatch: {what} (difference {difference:e})")]
    IdentityMismatch { what: String, difference: f64 },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::InvalidExponent(_)
            | Error::SingularPoint(_)
            | Error::GridTooCoarse(_) => 2,
            Error::NonConvergence { .. }
            | Error::NoSignChange { .. }
            | Error::MaxIterations(_)
            | Error::SlowConvergence(_)
            | Error::IdentityMismatch { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
