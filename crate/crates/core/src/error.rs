use thiserror::Error;

/// Failure modes shared by every layer of the crate.
///
/// The two variants map onto distinct CLI exit statuses: configuration
/// problems are the caller's to fix, numeric-domain failures indicate a
/// state or optimizer defect.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numeric-domain error: {0}")]
    NumericDomain(String),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::NumericDomain(msg.into())
    }

    /// Prefixes the message with the location it was raised at, keeping the kind.
    pub fn context(self, ctx: impl std::fmt::Display) -> Self {
        match self {
            Error::Config(m) => Error::Config(format!("{ctx}: {m}")),
            Error::NumericDomain(m) => Error::NumericDomain(format!("{ctx}: {m}")),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
