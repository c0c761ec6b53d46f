use crate::graph::{EdgeId, VertexId};

/// Errors shared across the crate.
///
/// Negative mathematical verdicts (a failed packing, a connectivity witness,
/// a non-rigid graph) are *not* errors; they are returned as values. `Error`
/// covers violated preconditions, malformed inputs and internal
/// inconsistencies only.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("loop edge at vertex {0} is not allowed")]
    LoopEdge(VertexId),
    #[error("vertex id {id} out of range (vertex count is {n})")]
    VertexOutOfRange { id: VertexId, n: usize },
    #[error("edge id {id} out of range (edge count is {m})")]
    EdgeOutOfRange { id: EdgeId, m: usize },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("cut side Y must be non-empty")]
    EmptyCutSide,
    #[error("deleted set X and cut side Y must be disjoint")]
    OverlappingCutSets,
    #[error("X and Y must not cover all vertices")]
    CutSidesCoverAll,

    #[error("operation needs at least {need} vertices, graph has {have}")]
    TooFewVertices { need: usize, have: usize },
    #[error("graph must be simple (no parallel edges)")]
    NotSimple,
    #[error("edge set must be non-empty")]
    EmptyEdgeSet,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("target vertex set must have even cardinality")]
    OddTargetCount,
    #[error("edge set is not a spanning tree")]
    NotSpanningTree,
    #[error("vertex {0} has odd degree in the selected subgraph")]
    OddDegreeVertex(VertexId),
    #[error("selected subgraph is not connected on its non-isolated vertices")]
    DisconnectedSupport,

    #[error("subgraph minus vertex {vertex} is not {edge_connectivity}-edge-connected")]
    RobustnessPrecondition {
        vertex: VertexId,
        edge_connectivity: usize,
    },

    #[error("{what} exceeds the brute-force cap ({got} > {cap})")]
    InstanceTooLarge {
        what: &'static str,
        cap: usize,
        got: usize,
    },
    #[error("gave up after {attempts} sampling attempts")]
    MaxAttemptsExhausted { attempts: usize },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
