use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} did not converge after {iterations} iterations")]
    Convergence { what: &'static str, iterations: usize },

    /// Adaptive quadrature exhausted its subdivision budget. The best
    /// estimate is carried along so callers can decide to use it anyway.
    #[error("quadrature did not converge: value {value:e}, error estimate {err_estimate:e}")]
    Quadrature { value: f64, err_estimate: f64 },

    #[error("non-finite value encountered in {0}")]
    NonFinite(String),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("model fit failed: {0}")]
    Fit(String),

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
