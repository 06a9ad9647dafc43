use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A simplicial-set presentation is malformed or violates a simplicial identity.
    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("argument error: {0}")]
    Argument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Faces `i < j` of a face family disagree on their common face.
    #[error("incompatible face family: faces {i} and {j} disagree on their common face")]
    IncompatibleFaces { i: usize, j: usize },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("invalid algebra or module structure: {0}")]
    Structure(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
