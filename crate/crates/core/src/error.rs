use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Bases not all > 1 or not pairwise coprime.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A caller-side precondition of a certificate or order computation.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "search volume {volume:.3e} exceeds the configured ceiling {limit:.3e}; \
         raise the limit or use a smaller cap"
    )]
    ResourceLimit { volume: f64, limit: f64 },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
