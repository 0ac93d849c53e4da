use thiserror::Error;

use crate::numeric::Mode;

/// Errors shared by every engine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("scalar modes do not mix: {0:?} vs {1:?}")]
    ModeMismatch(Mode, Mode),

    #[error("tolerance {tol} is not valid in {mode:?} mode")]
    Tolerance { mode: Mode, tol: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{0} must be nonzero")]
    ZeroInput(&'static str),

    #[error("two-form is not decomposable")]
    NotDecomposable,

    #[error("input rows are linearly dependent")]
    DependentRows,

    #[error("{0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
