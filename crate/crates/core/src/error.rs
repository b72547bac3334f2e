use std::path::PathBuf;

use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid state: {0}")]
    InvalidState(&'static str),

    #[error("vertex {0} has no neighbors")]
    NoNeighbor(VertexId),

    #[error("instance too large for exact computation: n = {n} exceeds max_n = {max_n}")]
    InstanceTooLarge { n: usize, max_n: usize },

    #[error("{path}: line {line}: {message}")]
    Load {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
