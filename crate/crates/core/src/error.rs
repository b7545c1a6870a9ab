use thiserror::Error;

/// Errors raised by the toolkit.
///
/// `CapExceeded` is kept separate from the input errors so that callers can
/// report a resource limit differently from a malformed request.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} exceeds cap: {size} > {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn cap(what: &'static str, size: impl TryInto<u128>, cap: impl TryInto<u128>) -> Self {
        Error::CapExceeded {
            what,
            size: size.try_into().unwrap_or(u128::MAX),
            cap: cap.try_into().unwrap_or(u128::MAX),
        }
    }

    pub(crate) fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage { stage, source: Box::new(self) }
    }

    /// True when the error (or the error wrapped by a stage) is a resource cap.
    pub fn is_cap(&self) -> bool {
        match self {
            Error::CapExceeded { .. } => true,
            Error::Stage { source, .. } => source.is_cap(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
