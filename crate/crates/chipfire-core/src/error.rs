use alloc::string::String;
use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An edge referenced a vertex that is not part of the graph.
    UnknownEndpoint { edge: String, endpoint: String },
    /// A vertex name or index that does not exist.
    UnknownVertex(String),
    /// An edge id that does not exist.
    UnknownEdge(usize),
    /// The operation requires a connected graph.
    Disconnected,
    /// The graph has no vertex of valence >= 3; mark a base vertex to
    /// decompose a pure cycle.
    PureCycle,
    /// A valence-1 vertex was found where the theory assumes grafted
    /// trees have been contracted away.
    DanglingVertex(String),
    /// Empty vertex list.
    EmptyGraph,
    /// Contraction along a topological loop is not defined.
    LoopContraction,
    /// The topological edge does not belong to the graph.
    EdgeNotInGraph,
    /// The named edge is not a bridge.
    NotABridge,
    /// Divisor does not live on this graph (vertex count mismatch).
    DivisorGraphMismatch,
    /// Chip arithmetic left the i64 range.
    ChipOverflow,
    /// Negative chips off the fire source make the burn ill-defined.
    NegativeChips(String),
    /// Reduction exceeded the iteration safety cap.
    IterationCap(usize),
    /// Precondition failure described by the message.
    Precondition(String),
    /// Resource guard tripped (enumeration too large, etc.).
    ResourceLimit(String),
    /// Malformed registry or pattern data.
    Registry(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownEndpoint { edge, endpoint } => {
                write!(f, "edge {edge}: unknown endpoint {endpoint}")
            }
            Error::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            Error::UnknownEdge(e) => write!(f, "unknown edge id {e}"),
            Error::Disconnected => write!(f, "graph is not connected"),
            Error::PureCycle => write!(
                f,
                "pure cycle: no vertex of valence >= 3; mark a base vertex to decompose"
            ),
            Error::DanglingVertex(v) => {
                write!(f, "vertex {v} has valence 1; contract grafted trees first")
            }
            Error::EmptyGraph => write!(f, "graph must have at least one vertex"),
            Error::LoopContraction => write!(f, "cannot contract a topological loop"),
            Error::EdgeNotInGraph => write!(f, "topological edge does not belong to the graph"),
            Error::NotABridge => write!(f, "edge is not a bridge"),
            Error::DivisorGraphMismatch => write!(f, "divisor does not live on this graph"),
            Error::ChipOverflow => write!(f, "chip count overflowed 64-bit range"),
            Error::NegativeChips(v) => {
                write!(f, "vertex {v} has negative chips away from the fire source")
            }
            Error::IterationCap(n) => {
                write!(f, "reduction exceeded the iteration cap of {n} passes")
            }
            Error::Precondition(m) => write!(f, "precondition failed: {m}"),
            Error::ResourceLimit(m) => write!(f, "resource limit: {m}"),
            Error::Registry(m) => write!(f, "registry error: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
