use thiserror::Error;

use crate::hypergraph::{EdgeId, VertexId};

#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no safe edge available at vertex {vertex}")]
    EmptySafeSet { vertex: VertexId },

    #[error("edge {0} is not an edge of the instance")]
    UnknownEdge(EdgeId),

    #[error("vertex {0} is not a vertex of the instance")]
    UnknownVertex(VertexId),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
