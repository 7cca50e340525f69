use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("pattern has {size} vertices, search cap is {cap}")]
    UnsupportedPattern { size: usize, cap: usize },

    #[error("graph is disconnected")]
    Disconnected,

    /// The input lies outside the graph class an algorithm is defined for.
    #[error("class mismatch: {0}")]
    ClassMismatch(String),

    /// A structural theorem failed on an input that passed its preconditions.
    #[error("impossible graph: {0}")]
    ImpossibleGraph(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("enumeration cap exceeded after {count} sets")]
    CapExceeded { count: usize },

    #[error("search limit reached; best known bounds [{lower}, {upper}]")]
    SearchLimit { lower: usize, upper: usize },

    #[error("oracle guard: {what} = {size} exceeds limit {limit}")]
    OracleGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("gadget wiring: {0}")]
    GadgetWiring(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
