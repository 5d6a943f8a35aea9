use thiserror::Error;

use crate::graph::{EdgeId, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph is disconnected: vertex {unreachable} is unreachable from {root}")]
    Disconnected { root: Vertex, unreachable: Vertex },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("tree with {0} vertices cannot be split")]
    TreeTooSmall(usize),
    #[error("edge {0} is a tree edge")]
    TreeEdge(EdgeId),
    #[error("edge {0} is not a tree edge")]
    NotTreeEdge(EdgeId),
    #[error("{0} marked vertices cannot be perfectly matched")]
    OddMarking(usize),
    #[error("secret sharing needs at least 2 shares, got {0}")]
    TooFewShares(usize),
    #[error("iteration cap {cap} exceeded in {stage}")]
    IterationCap { stage: &'static str, cap: usize },
    #[error("conflict graph pair {pair} has out-degree {degree}")]
    ConflictOutDegree { pair: usize, degree: usize },
    #[error("neighborhood cover left {uncovered} balls uncovered after {phases} phases")]
    NeighborhoodCoverIncomplete { phases: usize, uncovered: usize },
    #[error("graph is not 3-edge-connected: cut of size {cut} between {u} and {v}")]
    NotThreeEdgeConnected { u: Vertex, v: Vertex, cut: usize },
    #[error("missing route for edge {edge}: {reason}")]
    MissingRoute { edge: EdgeId, reason: &'static str },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
