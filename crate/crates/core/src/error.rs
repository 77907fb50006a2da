use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point or parameter lies outside the domain of an operation.
    #[error("{what} outside {domain}")]
    OutOfDomain { what: String, domain: String },

    /// A structural precondition failed. `field` names the offending input.
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    /// An integral that must be finite diverges.
    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error("unsupported gauge: {0}")]
    UnsupportedGauge(String),

    /// An iterative search hit its cap; carries the best bracket found.
    #[error("numeric failure: {message} (best bracket [{lo}, {hi}])")]
    NumericFailure { message: String, lo: f64, hi: f64 },
}

impl Error {
    pub(crate) fn out_of_domain(what: impl Into<String>, domain: impl Into<String>) -> Self {
        Error::OutOfDomain {
            what: what.into(),
            domain: domain.into(),
        }
    }

    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }
}
