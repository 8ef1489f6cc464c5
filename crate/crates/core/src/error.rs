use thiserror::Error;

/// Errors raised on malformed input or violated call contracts.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(usize),

    #[error("dimacs line {line}: {message}")]
    Dimacs { line: usize, message: String },

    #[error("invalid colouring: {0}")]
    InvalidColouring(String),

    #[error("vertex {vertex} already belongs to class {class}")]
    NoOpMove { vertex: usize, class: usize },

    #[error("graph is not {d}-degenerate")]
    NotDegenerate { d: usize },

    #[error("stale representative: vertex {vertex} cannot move from class {from} to class {to}")]
    StaleRepresentative {
        vertex: usize,
        from: usize,
        to: usize,
    },

    #[error("classes {from} -> {to} are not joined by an arc")]
    MissingArc { from: usize, to: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
