use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("decode error at offset {offset}: {reason}")]
    Decode { offset: usize, reason: String },
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("triangulation is not orientable")]
    NonOrientable,
    #[error("malformed census entry: {0}")]
    MalformedEntry(String),
    #[error("not taut: {0}")]
    NotTaut(String),
    #[error("not transverse taut: {0}")]
    NotTransverseTaut(String),
    #[error("not veering: {0}")]
    NotVeering(String),
    #[error("branch locus: {0}")]
    BranchLocus(String),
    #[error("invalid fatgraph: {0}")]
    InvalidFatgraph(String),
    #[error("curve set does not separate the surface: {0}")]
    NotSeparating(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

pub type Result<T> = std::result::Result<T, Error>;
