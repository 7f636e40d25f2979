use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph on {n} vertices exceeds the vertex cap {cap}")]
    TooManyVertices { n: usize, cap: usize },

    #[error("subsets S and T overlap")]
    OverlappingSubsets,

    #[error("subset is over a different vertex count ({got}, expected {expected})")]
    SubsetUniverse { got: usize, expected: usize },

    #[error("clique order {0} is not supported (only 3 and 4)")]
    UnsupportedCliqueOrder(usize),

    #[error("graph contains a K4 on vertices {0:?}")]
    ContainsK4([usize; 4]),

    #[error("graph contains a triangle on vertices {0:?}")]
    ContainsTriangle([usize; 3]),

    #[error("graph is triangle-free; the route needs a triangle")]
    TriangleFree,

    #[error("graph is not regular")]
    NotRegular,

    #[error("invalid blow-up structure: {0}")]
    InvalidBlowUp(String),

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),

    #[error("malformed graph6 input: {0}")]
    Graph6(String),

    #[error("oracle refuses n = {n} above its cap {cap}")]
    OracleCap { n: usize, cap: usize },

    #[error("subset size {k} is invalid for n = {n}")]
    SubsetSize { k: usize, n: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("n = {0} is odd")]
    OddOrder(usize),

    #[error("no branch of the route applies: {0}")]
    NoBranch(String),

    #[error("no strategy met the bound {bound} (best achieved {achieved}); counterexample candidate")]
    CounterexampleCandidate { achieved: usize, bound: String },

    #[error("certificate error: {0}")]
    Certificate(String),

    #[error("closed-form identity failed: {0}")]
    Transcription(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
