use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum G2Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value does not fit in a finite f64: {0}")]
    FloatOverflow(String),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("invalid metric parameters: {0}")]
    InvalidMetric(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("newton iteration did not converge within {0} steps")]
    NoConvergence(usize),
}

impl G2Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        G2Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        G2Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, G2Error>;
