use thiserror::Error;

/// Errors raised by the numerical kernels and the law evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at {0}")]
    Pole(f64),

    #[error("overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("parameters outside the supported regime: requires {requirement}")]
    Regime { requirement: &'static str },

    #[error("{what} did not converge within {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("quadrature did not reach tolerance (estimate {estimate:e}, error {error:e})")]
    Quadrature { estimate: f64, error: f64 },

    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
