use thiserror::Error;

use crate::graph::EdgeId;
use crate::recognize::ClassId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge}: endpoint outside 0..{n}")]
    VertexOutOfRange { edge: EdgeId, n: usize },
    #[error("edge {edge}: self-loop at vertex {vertex}")]
    SelfLoop { edge: EdgeId, vertex: usize },
    #[error("edge {edge}: duplicate of {{{u}, {v}}}")]
    DuplicateEdge { edge: EdgeId, u: usize, v: usize },
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("edge {edge}: weight {weight} outside 1..={k}")]
    WeightOutOfRange { edge: EdgeId, weight: u32, k: u32 },
    #[error("weights are not surjective onto 1..={k}: {missing} is unused")]
    NotSurjective { k: u32, missing: u32 },
    #[error("level {level} outside 1..={}", k + 1)]
    LevelOutOfRange { level: u32, k: u32 },
}

/// Errors from the weighted-graph text format. Line numbers are 1-based and
/// count every physical line, comments included.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: weight {weight} outside 1..={k}")]
    WeightOutOfRange { line: usize, weight: u32, k: u32 },
    #[error("line {line}: weights are not surjective onto 1..={k} ({missing} unused)")]
    NotSurjective { line: usize, k: u32, missing: u32 },
    #[error("line {line}: expected {expected} edge lines, found {found}")]
    EdgeCount { line: usize, expected: usize, found: usize },
    #[error("line {line}: edge is not part of the graph")]
    UnknownEdge { line: usize },
    #[error("missing header line `n m k`")]
    MissingHeader,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BucketError {
    #[error("object {0} is not live")]
    NotLive(usize),
    #[error("object {0} listed twice")]
    DuplicateObject(usize),
    #[error("key {key} outside {min}..={max}")]
    KeyOutOfRange { key: usize, min: usize, max: usize },
    #[error("structure is empty")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("ordering has {found} entries, graph has {expected} edges")]
    WrongLength { expected: usize, found: usize },
    #[error("edge {0} appears twice in the ordering")]
    Repeated(EdgeId),
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("graph is not a {0} graph")]
    NotInClass(ClassId),
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("edge {0} was already deleted")]
    AlreadyDeleted(EdgeId),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}
