use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised while loading inputs or scoring a solution set.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violates a precondition of the requested operation.
    #[error("{0}")]
    Domain(String),

    /// A cluster was requested for two identical anchor points.
    #[error("degenerate reference pair: anchors coincide")]
    DegeneratePair,

    #[error("{}: row {row}: {msg}", path.display())]
    Parse {
        path: PathBuf,
        row: usize,
        msg: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
