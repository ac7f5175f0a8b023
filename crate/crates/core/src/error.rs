use thiserror::Error;

/// Errors raised by the library.
///
/// Parse failures and precondition violations are kept apart because the
/// command-line front end maps them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed textual input. `position` is a 0-based character offset.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// An argument is outside the domain of the operation.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A bounded computation ran out of budget before reaching an answer.
    #[error("computation budget exhausted: {0}")]
    Budget(String),

    /// An identity that must hold was found to be false.
    #[error("property failed: {0}")]
    Property(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(position: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
