use thiserror::Error;

use crate::format::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} listed more than once in a set")]
    DuplicateVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("vertices {0} and {1} lie in different components")]
    Disconnected(usize, usize),
    #[error("path has {0} vertices, need at least 2")]
    PathTooShort(usize),
    #[error("vertex sequence is not a path: {0}")]
    NotAPath(String),
    #[error("not a descending path: {0}")]
    NotDescending(String),
    #[error("tree has {0} vertices, need at least 2")]
    TooSmall(usize),
    #[error("vertex {vertex} has {children} children, expected a binary tree")]
    NotBinary { vertex: usize, children: usize },
    #[error("family index must be at least 1")]
    ZeroIndex,
    #[error("invalid haircomb: {0}")]
    InvalidHaircomb(String),
    #[error("shift {0} gives no overlap")]
    EmptyOverlap(isize),
    #[error("tree has {n} vertices, oracle limit is {limit}")]
    OracleLimit { n: usize, limit: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
    #[error("constructed sets failed verification: {0}")]
    Verification(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
