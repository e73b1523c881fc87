use thiserror::Error;

/// Errors raised by the library. Validation problems that are data
/// (profile or series violations) are returned as lists instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not bijective: {0}")]
    NotBijective(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("empty interval: {0}")]
    EmptyInterval(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("incompatible module: {0}")]
    IncompatibleModule(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not grid aligned: {0}")]
    NotGridAligned(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
