use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("parallel edge `{0}`-`{1}`")]
    ParallelEdge(String, String),
    #[error("graph is disconnected: `{0}` cannot reach `{1}`")]
    Disconnected(String, String),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("graph is not median: ({0}, {1}, {2}) has no unique median")]
    NotMedian(String, String, String),
    #[error("graph contains a cube on {0:?}")]
    NotCubeFree(Vec<String>),
    #[error("not a squaregraph: {0}")]
    NotSquaregraph(String),
    #[error("not 2-connected (articulation point `{0}`); split into blocks first")]
    NotBiconnected(String),
    #[error("zone of edge `{0}`-`{1}` is not a ladder: {2}")]
    NotLadder(String, String, String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("split system does not separate `{0}` and `{1}`")]
    NotSeparating(String, String),
    #[error("{found} splits exceed the cap of {cap}")]
    TooManySplits { found: usize, cap: usize },
    #[error("{found} vertices exceed the cap of {cap}")]
    TooManyVertices { found: usize, cap: usize },
    #[error("clique too large: {0:?}")]
    CliqueTooLarge(Vec<String>),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("invalid expansion: {0}")]
    InvalidExpansion(String),
    #[error("malformed chord diagram: {0}")]
    MalformedDiagram(String),
    #[error("chord diagram has pairwise crossing chords `{0}`, `{1}`, `{2}`")]
    DiagramTriangle(String, String, String),
    #[error("coloring needs more than {cap} colors")]
    ColorCapExceeded { cap: usize },
    #[error("splits {0} and {1} in one color class are incompatible")]
    IncompatibleClass(usize, usize),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable tag used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownVertex(_) => "unknown-vertex",
            Error::DuplicateVertex(_) => "duplicate-vertex",
            Error::SelfLoop(_) => "self-loop",
            Error::ParallelEdge(..) => "parallel-edge",
            Error::Disconnected(..) => "disconnected",
            Error::EmptyGraph => "empty-graph",
            Error::NotMedian(..) => "not-median",
            Error::NotCubeFree(_) => "not-cube-free",
            Error::NotSquaregraph(_) => "not-squaregraph",
            Error::NotBiconnected(_) => "not-2-connected",
            Error::NotLadder(..) => "not-ladder",
            Error::InvalidSplit(_) => "invalid-split",
            Error::NotSeparating(..) => "not-separating",
            Error::TooManySplits { .. } => "too-many-splits",
            Error::TooManyVertices { .. } => "too-many-vertices",
            Error::CliqueTooLarge(_) => "clique-too-large",
            Error::InvalidOrder(_) => "invalid-order",
            Error::InvalidSpec(_) => "invalid-spec",
            Error::InvalidExpansion(_) => "invalid-expansion",
            Error::MalformedDiagram(_) => "malformed-diagram",
            Error::DiagramTriangle(..) => "diagram-triangle",
            Error::ColorCapExceeded { .. } => "color-cap-exceeded",
            Error::IncompatibleClass(..) => "incompatible-class",
            Error::OutOfRange(_) => "out-of-range",
            Error::Invariant(_) => "invariant",
            Error::Json(_) => "json",
        }
    }
}
