use std::path::PathBuf;

use thiserror::Error;

use crate::units::Dimension;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    Dimension {
        context: String,
        expected: Dimension,
        found: Dimension,
    },

    #[error("non-finite value produced by {0}")]
    NonFinite(String),

    #[error("division by zero in {0}")]
    DivisionByZero(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("ratio undefined: {0}")]
    UndefinedRatio(String),

    #[error("loop passes within {distance:e} m of the vortex center (minimum {min_distance:e} m)")]
    Singularity { distance: f64, min_distance: f64 },

    #[error("step size underflow at t = {t:e} s, r = {r:e} m (last good state)")]
    Stiffness { t: f64, r: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of a numerical method rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Stiffness { .. } | Error::Quadrature(_) | Error::NonFinite(_)
        )
    }
}
