use thiserror::Error;

/// Errors reported by graph construction, enumeration preconditions and parsing.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex set over {found} vertices used with a graph on {expected} vertices")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex set does not induce a connected graph")]
    Disconnected,
    #[error("sequence is not a path: {0}")]
    NotAPath(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("instance too large: {what} is {actual}, limit {limit}")]
    TooLarge { what: &'static str, actual: usize, limit: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
