use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("line {line}: edge weight must be a finite value > 0, got {weight}")]
    NonPositiveWeight { line: usize, weight: f64 },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("vertex index {index} out of range for a graph with {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
