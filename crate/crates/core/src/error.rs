use thiserror::Error;

use crate::drawing::DrawingViolation;
use crate::graph::{EdgeId, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),

    #[error("drawing rejected: {}", join(.0))]
    InvalidDrawing(Vec<DrawingViolation>),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("certificate does not verify: {0}")]
    CertificateRejected(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("instance too large for {what}: size {size} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("construction invariant broken: {0}")]
    Invariant(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::TooLarge { .. })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(Vertex),
    #[error("edge endpoint {0} is not a declared vertex")]
    UnknownVertex(Vertex),
    #[error("edge id {0} out of range")]
    UnknownEdge(EdgeId),
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}
