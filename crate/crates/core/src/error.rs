use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// An eigensolver or validity check failed on a numerically valid input.
    #[error("numerical failure in {what} (dim {dim}{})", seed.map(|s| format!(", seed {s}")).unwrap_or_default())]
    Numerical {
        what: String,
        dim: usize,
        seed: Option<u64>,
    },

    /// A single ensemble realization failed; the seed replays it exactly.
    #[error("realization (h={hamiltonian_index}, s={state_index}, seed={seed}) failed: {source}")]
    Realization {
        hamiltonian_index: usize,
        state_index: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
