//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An edge-list document could not be parsed.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The iterative eigensolver missed its convergence target.
    #[error("eigensolver did not converge: off-diagonal norm {off_norm:.3e} after {sweeps} sweeps")]
    NoConvergence { off_norm: f64, sweeps: usize },

    /// The principal instability window has (numerically) zero width.
    #[error("degenerate instability window: q_(n-1) - q_n = {gap:.3e}")]
    DegenerateWindow { gap: f64 },

    /// A seed-dependent construction exceeded its retry budget.
    #[error("gave up after {attempts} attempts; try a different seed")]
    RetryExhausted { attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
