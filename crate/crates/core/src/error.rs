use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown identity `{0}` (use --list to see the catalogue)")]
    UnknownIdentity(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("precision: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
