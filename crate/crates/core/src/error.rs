use thiserror::Error;

use crate::label::VertexLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("input contains no hyperedges")]
    Empty,
    #[error("missing terminating '.'")]
    MissingPeriod,
    #[error("illegal character {ch:?} at byte {pos}")]
    IllegalChar { pos: usize, ch: char },
    #[error("'+' at byte {pos} has no base character")]
    DanglingPlus { pos: usize },
    #[error("hyperedge {edge} is empty")]
    EmptyEdge { edge: usize },
    #[error("unexpected input after '.' at byte {pos}")]
    TrailingInput { pos: usize },
    #[error("dimension {given} is smaller than hyperedge size {needed}")]
    DimensionTooSmall { given: usize, needed: usize },
    #[error("vertex {label} repeated in hyperedge {edge}")]
    RepeatedVertex { edge: usize, label: VertexLabel },
    #[error("hyperedges {first} and {second} are identical")]
    DuplicateEdge { first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoordParseError {
    #[error("line {line}: expected `<label> = (c1,...,cn)`")]
    Syntax { line: usize },
    #[error("line {line}: bad label")]
    BadLabel { line: usize },
    #[error("line {line}: unknown token {token:?}")]
    UnknownToken { line: usize, token: String },
    #[error("line {line}: token {token:?} is not in the {ring} ring")]
    WrongRing { line: usize, token: String, ring: &'static str },
    #[error("line {line}: vector has {got} components, expected {expected}")]
    Ragged { line: usize, got: usize, expected: usize },
    #[error("line {line}: duplicate label {label}")]
    DuplicateLabel { line: usize, label: VertexLabel },
    #[error("line {line}: zero vector for {label}")]
    ZeroVector { line: usize, label: VertexLabel },
    #[error("no vectors")]
    Empty,
}

/// Failures of structural operations on a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("operation leaves no hyperedges")]
    NoEdgesLeft,
    #[error("vertex {0} is not in the hypergraph")]
    UnknownVertex(VertexLabel),
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("fill dimension {given} is smaller than hyperedge size {needed}")]
    DimensionTooSmall { given: usize, needed: usize },
    #[error("hypergraph is binary")]
    Binary,
    #[error("{k} vertices is too many for exhaustive enumeration (max {max})")]
    TooManyVertices { k: usize, max: usize },
    #[error("pool shares no vertex labels with the base hypergraph")]
    DisjointPool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoordError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(&'static str, &'static str),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("no vector for vertex {0}")]
    MissingVector(VertexLabel),
    #[error("input vectors {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("input vectors are linearly dependent")]
    Dependent,
    #[error("component alphabet needs 0 and at least one nonzero value")]
    BadComponents,
    #[error("clique enumeration exceeded its budget of {0} steps")]
    BudgetExceeded(u64),
    #[error("no orthogonal {0}-tuples exist for these components")]
    NoCliques(usize),
    #[error("integer overflow while scaling components")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerationError {
    #[error("runs must be at least 1")]
    NoRuns,
    #[error("method M2 needs an addition pool")]
    PoolRequired,
    #[error("an addition pool is only used by method M2")]
    PoolNotAllowed,
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("could not start worker pool: {0}")]
    Workers(String),
}
