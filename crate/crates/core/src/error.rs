use thiserror::Error;

use crate::graph::VertexId;

/// Errors raised by graph construction, generators and analyses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("loop edge ({0}, {0}) is not allowed")]
    LoopEdge(VertexId),

    #[error("edge ({u}, {v}) has an endpoint outside 0..{vertex_count}")]
    EndpointOutOfRange {
        u: VertexId,
        v: VertexId,
        vertex_count: usize,
    },

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("partition does not cover the vertex set: {0}")]
    PartitionMismatch(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("level contract violated on edge ({u}, {v}): level {lu} -> {lv}")]
    LevelContract { u: VertexId, v: VertexId, lu: i64, lv: i64 },

    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),

    #[error("binomial coefficient C({n}, {k}) exceeds the supported bound {bound}")]
    BinomialOverflow { n: u64, k: u64, bound: u64 },

    #[error("window would have {requested} vertices, above the cap of {cap}")]
    SizeCap { requested: u128, cap: usize },

    #[error("generated digraph is empty after pruning isolated vertices")]
    EmptyAfterPruning,

    #[error("window too small: depth {depth} contains boundary vertex {vertex}")]
    WindowTooSmall { depth: usize, vertex: VertexId },

    #[error("layer {layer} out of range (valid {min}..={max})")]
    LayerOutOfRange { layer: usize, min: usize, max: usize },

    #[error("digraph has {vertices} vertices, above the isomorphism cap of {cap}")]
    IsoCapExceeded { vertices: usize, cap: usize },

    #[error("alternet is not complete; it touches boundary vertices")]
    IncompleteAlternet,

    #[error("out-valency {m} is not the product {p} * {q} of primes p <= q")]
    NotPrimeProduct { m: usize, p: usize, q: usize },

    #[error("malformed digraph file: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
