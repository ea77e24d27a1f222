use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertices {0} and {1} are not connected")]
    Unreachable(usize, usize),

    #[error("cycle enumeration exceeded the cap of {cap}")]
    CapExceeded { cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("certificate level insufficient: {0}")]
    InsufficientLevel(String),

    #[error("no u,v-theta-graph exists between {0} and {1}")]
    NoTheta(usize, usize),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("construction failed validation: {0}")]
    Invalid(String),

    #[error("falsification: {0}")]
    Falsified(String),
}

pub type Result<T> = std::result::Result<T, Error>;
