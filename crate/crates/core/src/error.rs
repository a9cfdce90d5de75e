use thiserror::Error;

use crate::sweep::SweepRow;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Non-symmetric, indefinite or unphysical covariance matrix.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Function evaluated outside its domain (e.g. h(x) for x < 1/2).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical degeneracy: {0}")]
    Degenerate(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("no sign change on bracket [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    Bracketing {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("bisection did not reach tolerance after {iterations} iterations")]
    Convergence { iterations: usize },

    #[error("sweep aborted at row {index} after {} completed rows: {source}", .completed.len())]
    PartialSweep {
        index: usize,
        completed: Vec<SweepRow>,
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
