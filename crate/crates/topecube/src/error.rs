//! Error type shared by the whole crate.

use crate::word::SignWord;

/// Errors produced by graph construction, analysis and generation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// More coordinates were requested than a machine word can hold.
    #[error("width {width} exceeds the supported maximum of {max} coordinates")]
    CapacityExceeded { width: usize, max: usize },

    /// A graph must contain at least one vertex.
    #[error("graph has no vertices")]
    EmptyGraph,

    /// A coordinate index outside `0..width`.
    #[error("coordinate {coord} out of range for width {width}")]
    InvalidCoordinate { coord: usize, width: usize },

    /// A vertex was expected to belong to the graph but does not.
    #[error("vertex {0} is not in the graph")]
    VertexNotInGraph(SignWord),

    /// Two graphs or a graph and a word disagree on the number of coordinates.
    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    /// The operation requires a partial cube.
    #[error("graph is not a partial cube: {reason}")]
    NotPartialCube { reason: String },

    /// The operation requires a simple graph (no constant and no twin coordinates).
    #[error("graph is not simple: {reason}")]
    NotSimple { reason: String },

    /// The operation requires a graph of a specific class.
    #[error("graph is not {required}")]
    WrongClass { required: &'static str },

    /// An isometric expansion was attempted with sides that do not cover the graph.
    #[error("expansion sides do not cover the vertex set")]
    CoverViolation,

    /// An isometric expansion was attempted with a non-isometric side.
    #[error("expansion side {side} is not an isometric subgraph")]
    NonIsometricSide { side: u8 },

    /// A size guard was exceeded; the caller asked for more than the tool supports.
    #[error("{what} supports at most {limit}, got {got}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    /// A parameter combination outside the documented domain of an operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Text input (.topes files, arrangement JSON) failed to parse.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The cocircuit graph of a non-antipodal host needs all maximal faces of equal
    /// rank and a connected cocircuit graph.
    #[error("cocircuit graph undefined: {reason}")]
    NotPure { reason: String },

    /// An invariant that the theory promises failed to hold at run time; indicates
    /// a bug or an input outside the documented preconditions.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    /// Filesystem or serialization problem while reading or writing catalogs.
    #[error("catalog I/O: {0}")]
    CatalogIo(String),

    /// An arrangement violated a precondition (non-simple, unbounded region, ...).
    #[error("arrangement: {0}")]
    Arrangement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
