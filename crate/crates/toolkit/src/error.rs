use gaincurv_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type ToolResult<T> = Result<T, ToolError>;

pub const EXIT_OK: i32 = 0;
/// A verification suite ran to completion and some check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

impl ToolError {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        ToolError::Parse {
            line,
            message: message.into(),
        }
    }

    /// Stable machine-readable name of the failure.
    pub fn kind(&self) -> &'static str {
        match self {
            ToolError::Io { .. } => "Io",
            ToolError::Parse { .. } => "Parse",
            ToolError::Usage(_) => "Usage",
            ToolError::Core(e) => match e {
                CoreError::DisconnectedGraph { .. } => "DisconnectedGraph",
                CoreError::EmptyGraph => "EmptyGraph",
                CoreError::VertexOutOfRange(_) => "VertexOutOfRange",
                CoreError::SelfLoop(_) => "SelfLoop",
                CoreError::DuplicateEdge(..) => "DuplicateEdge",
                CoreError::InvalidLoop(_) => "InvalidLoop",
                CoreError::InvalidCircuit(_) => "InvalidCircuit",
                CoreError::BudgetExceeded { .. } => "BudgetExceeded",
                CoreError::WrongCardinality { .. } => "WrongCardinality",
                CoreError::NonSquare { .. } => "NonSquare",
                CoreError::DimensionMismatch(_) => "DimensionMismatch",
                CoreError::NotPrime(_) => "NotPrime",
                CoreError::CharacteristicTwo => "CharacteristicTwo",
                CoreError::DegreeUnsupported(_) => "DegreeUnsupported",
                CoreError::InfiniteGroup => "InfiniteGroup",
                CoreError::IsolatedVertex(_) => "IsolatedVertex",
                CoreError::GroupMismatch(_) => "GroupMismatch",
                CoreError::InvalidCovering(_) => "InvalidCovering",
                CoreError::MaxLenTooShort { .. } => "MaxLenTooShort",
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            ToolError::Core(CoreError::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }
}
