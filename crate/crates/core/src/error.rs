use std::io;
use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("taxonomy: missing topic: {0}")]
    MissingTopic(String),

    #[error("taxonomy: duplicate topic: {0}")]
    DuplicateTopic(String),

    #[error("taxonomy: unknown topic: {0}")]
    UnknownTopic(String),

    #[error("taxonomy: empty term list for topic: {0}")]
    EmptyTerms(String),

    #[error("{path}:{line}: malformed record: {reason}")]
    Malformed {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("malformed url: {0}")]
    MalformedUrl(String),

    #[error("expert index needs at least one expert profile")]
    NoExperts,

    #[error("empty diet")]
    EmptyDiet,

    #[error("divergence undefined: q[{0}] = 0 where p > 0")]
    DivergenceUndefined(&'static str),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("unknown baseline: {0}")]
    UnknownBaseline(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by bad caller arguments rather than bad data.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::InvalidArgument(_) | Error::UnknownBaseline(_))
    }
}
