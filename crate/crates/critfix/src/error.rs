use thiserror::Error;

/// Everything that can go wrong while building or transforming a map.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {edge} refers to unknown vertex {vertex}")]
    UnknownVertex { edge: usize, vertex: usize },

    #[error("edge {0} is a loop; loops are not supported")]
    LoopEdge(usize),

    #[error("unknown edge id {0}")]
    UnknownEdge(usize),

    #[error("dart (edge {edge}, end {end}) missing from the rotation of vertex {vertex}")]
    MissingDart { edge: usize, end: usize, vertex: usize },

    #[error("dart (edge {edge}, end {end}) appears more than once in the rotations")]
    DuplicateDart { edge: usize, end: usize },

    #[error("dart (edge {edge}, end {end}) listed at vertex {listed}, but the edge ends at vertex {expected}")]
    MisplacedDart { edge: usize, end: usize, listed: usize, expected: usize },

    #[error("graph is not connected ({components} components)")]
    NotConnected { components: usize },

    #[error("rotation system is not spherical (Euler characteristic {chi}, expected 2)")]
    NotSpherical { chi: i64 },

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("edge set is not a spanning tree: {reason}")]
    InvalidSpanningTree { reason: String },

    #[error("curve word uses generator {gen}, but only {available} generators exist")]
    UnknownGenerator { gen: usize, available: usize },

    #[error("cannot parse curve word {input:?}: {reason}")]
    WordSyntax { input: String, reason: String },

    #[error("face {face} (length {len}, {c_darts} corner darts) does not come from a charge edge")]
    FaceNotChargeLike { face: usize, len: usize, c_darts: usize },

    #[error("radial structure violated: {0}")]
    TischlerStructure(String),

    #[error("operand belongs to a different base graph")]
    MismatchedBase,

    #[error("attractor closure violated: word {word} left the attractor set")]
    AttractorClosure { word: String },

    #[error("edge count {0} outside supported range 1..={1}")]
    EdgeCountRange(usize, usize),

    #[error("cannot parse graph file: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
