use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A lattice sum was requested over `P(n)` with `n` outside `1..=cap`.
    #[error("partition size {n} is outside the supported range 1..={cap} (raise the cap with --nmax)")]
    SizeLimit { n: usize, cap: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("polynomial is not monic: leading coefficient is {0}")]
    NotMonic(Rational),

    #[error("root finding did not converge after {iterations} iterations (max scaled residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
