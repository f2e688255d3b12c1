use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("graph is disconnected ({components} components)")]
    DisconnectedGraph { components: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} listed twice")]
    DuplicateEdge(usize, usize),
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("{what} budget of {limit} exceeded")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("expected {expected} circuits (the cyclomatic number), got {got}")]
    WrongCardinality { expected: usize, got: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operation requires a field of characteristic other than 2")]
    CharacteristicTwo,
    #[error("degree {0} is not supported (maximum 3)")]
    DegreeUnsupported(usize),
    #[error("group has an infinite factor; derived graph cannot be materialized")]
    InfiniteGroup,
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("group element does not match the declared group: {0}")]
    GroupMismatch(String),
    #[error("invalid covering: {0}")]
    InvalidCovering(String),
    #[error("circuit length bound {max_len} is below the longest circuit ({longest})")]
    MaxLenTooShort { max_len: usize, longest: usize },
}
