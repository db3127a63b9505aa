use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown vertex: {0}")]
    UnknownVertex(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("constants profile rejected: {0}")]
    ProfileInvalid(String),

    #[error("code construction failed: {0}")]
    CodeConstruction(String),

    #[error("instance not decodable: {0}")]
    NotDecodable(String),

    #[error("decoding failed: {0}")]
    DecodeFailed(String),

    #[error("malformed vertex info: {0}")]
    MalformedVertexInfo(String),

    #[error("strategy invalid: {0}")]
    StrategyInvalid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("pipeline stage `{stage}` failed: {cause}")]
    Stage { stage: String, cause: Box<Error> },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
