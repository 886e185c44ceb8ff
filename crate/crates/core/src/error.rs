use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {0} listed more than once")]
    DuplicateVertex(usize),

    #[error("malformed graph6: {0}")]
    Graph6(String),

    #[error("graph too large for {what}: {n} vertices (limit {limit})")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("letter index {letter} out of range for an alphabet of size {k}")]
    InvalidLetter { letter: usize, k: usize },

    #[error("invalid lettering: {0}")]
    InvalidLettering(String),

    #[error("size mismatch: word has {word} positions but graph has {graph} vertices")]
    SizeMismatch { word: usize, graph: usize },

    #[error("module graph for vertex {0} is empty")]
    EmptyModule(usize),

    #[error("scale guard exceeded: n = {n}, k = {k} (limits n <= {max_n}, k <= {max_k})")]
    ScaleGuard {
        n: usize,
        k: usize,
        max_n: usize,
        max_k: usize,
    },

    #[error("search budget exhausted after {elapsed_ms} ms")]
    BudgetExhausted { elapsed_ms: u128 },

    #[error("exact solver refused prime quotient {graph6}: {reason}")]
    QuotientOutOfReach { graph6: String, reason: Box<Error> },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
