use thiserror::Error;

/// Errors raised anywhere in the expansion pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("backend mismatch: {0} vs {1}")]
    BackendMismatch(&'static str, &'static str),
    #[error("cannot parse `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("`pi` cannot be represented in the exact backend")]
    PiNotExact,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("reciprocal Pochhammer symbol has a pole: beta + {offset} = 0")]
    PoleAtBeta { offset: usize },
    #[error("parameter pole at the requested epsilon (lower parameter {index}, m = {m})")]
    PoleAtEps { index: usize, m: usize },
    #[error("lower parameter {index} is a nonpositive integer with zero slope")]
    UnresolvablePole { index: usize },
    #[error("series diverges: {0}")]
    DivergentSeries(String),
    #[error("truncation did not converge before M = {m_cap}")]
    TruncationNotConverged { m_cap: usize },
    #[error("invalid request: {0}")]
    InvalidRequest(String),
}

impl Error {
    pub(crate) fn parse(text: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            text: text.to_string(),
            reason: reason.into(),
        }
    }

    /// True for failures of the numerical procedure itself, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::TruncationNotConverged { .. } | Error::DivergentSeries(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
