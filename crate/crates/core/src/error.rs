use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A text document could not be parsed.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A table failed structural checks or the effect-algebra axioms.
    #[error("invalid algebra: {0}")]
    Invalid(String),

    /// An operation was called on an algebra outside its domain, e.g.
    /// decomposition on an algebra that is not sharply dominating.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Two routes that must agree produced different answers.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    /// Bad generator parameters or enumeration bound.
    #[error("bad parameters: {0}")]
    Parameters(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
