use thiserror::Error;

use crate::graph::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6: byte {byte} at offset {offset} is outside the printable range 63..=126")]
    Graph6Byte { byte: u8, offset: usize },
    #[error("graph6: expected {expected} payload bytes, found {found}")]
    Graph6Length { expected: usize, found: usize },
    #[error("graph6: empty record")]
    Graph6Empty,
    #[error("graph order {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge list: {0}")]
    EdgeListFormat(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge {0} is not an edge of the host graph")]
    NotHostEdge(Edge),
    #[error("edge {0} is already a tree edge")]
    AlreadyInTree(Edge),
    #[error("edge {0} is not a tree edge")]
    NotTreeEdge(Edge),
    #[error("edge {removed} is not on the fundamental cycle of {added}")]
    NotOnCycle { added: Edge, removed: Edge },
    #[error("edge set is not a spanning tree: {0}")]
    InvalidTree(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("family level {m} exceeds the configured limit {max}")]
    LevelTooLarge { m: u32, max: u32 },
    #[error("malformed family level: {0}")]
    MalformedLevel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
