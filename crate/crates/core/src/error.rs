use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph is disconnected; restrict it to its giant component first")]
    Disconnected,
    #[error("invalid vertex {0}")]
    InvalidVertex(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
