use thiserror::Error;

/// Errors raised by the engine.
///
/// The variants split into input/window problems (bad files, unknown ids,
/// segments leaving the stored window) and domain problems (a matrix pair
/// that is not a complex, a failed chain condition, an ambiguous heart).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HftError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed diagram: {0}")]
    Structural(String),

    #[error("unknown point id `{0}`")]
    UnknownPoint(String),

    #[error("window exceeded: {0}")]
    WindowExceeded(String),

    #[error("non-transverse intersection: {0}")]
    NonTransverse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a chain complex: {0}")]
    NotAComplex(String),

    #[error("chain condition violated: {0}")]
    ChainCondition(String),

    #[error("partner outside window: {0}")]
    PartnerOutsideWindow(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(String),
}

impl HftError {
    /// True for errors caused by the input or the finite window rather than
    /// by the mathematics of a well-formed query.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            HftError::Parse(_)
                | HftError::Structural(_)
                | HftError::UnknownPoint(_)
                | HftError::WindowExceeded(_)
                | HftError::NonTransverse(_)
                | HftError::PartnerOutsideWindow(_)
                | HftError::Io(_)
        )
    }
}

impl From<std::io::Error> for HftError {
    fn from(e: std::io::Error) -> Self {
        HftError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for HftError {
    fn from(e: serde_json::Error) -> Self {
        HftError::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, HftError>;
