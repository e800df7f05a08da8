use thiserror::Error;

/// Errors raised by graph construction, parsing and the exact searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for n = {n} (edge #{position})")]
    VertexOutOfRange {
        vertex: usize,
        n: usize,
        position: usize,
    },

    #[error("self-loop at vertex {vertex} (edge #{position})")]
    SelfLoop { vertex: usize, position: usize },

    #[error("graph has {n} vertices; at most {cap} are supported here")]
    TooManyVertices { n: usize, cap: usize },

    #[error("{what} limited to n <= {cap}, graph has n = {n}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("({u}, {v}) is not an edge of the graph")]
    NotAnEdge { u: usize, v: usize },

    #[error("vertex {vertex} is not in the graph")]
    MissingVertex { vertex: usize },

    #[error("arithmetic overflow while evaluating {what}")]
    Overflow { what: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {error}")]
    Line { line: usize, error: Box<Error> },

    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
