use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyVertexSet,
    #[error("loop edge at vertex {0:?}")]
    LoopEdge(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex {0:?} declared twice")]
    DuplicateVertex(String),
    #[error("edge {0:?}-{1:?} has multiplicity 0")]
    ZeroMultiplicity(String, String),
    #[error("divisor has {found} coefficients, graph has {expected} vertices")]
    IndexMismatch { expected: usize, found: usize },
    #[error("firing set must be nonempty and proper")]
    EmptyOrFullSet,
    #[error("Brill-Noether number rho({g},{d},{r}) = {rho} is negative")]
    NegativeRho { g: u64, d: u64, r: u64, rho: i64 },
    #[error("bound for ({g},{d},{r}) is not an integer: {value}")]
    NonIntegralBound {
        g: u64,
        d: u64,
        r: u64,
        value: String,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("edge {0} does not map onto an edge between the images of its endpoints")]
    EndpointMismatch(usize),
    #[error("morphism is not harmonic")]
    NotHarmonic,
    #[error("class mismatch: {0}")]
    ClassMismatch(String),
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::EmptyVertexSet => "EmptyVertexSet",
            Error::LoopEdge(_) => "LoopEdge",
            Error::Disconnected => "Disconnected",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::DuplicateVertex(_) => "DuplicateVertex",
            Error::ZeroMultiplicity(..) => "ZeroMultiplicity",
            Error::IndexMismatch { .. } => "IndexMismatch",
            Error::EmptyOrFullSet => "EmptyOrFullSet",
            Error::NegativeRho { .. } => "NegativeRho",
            Error::NonIntegralBound { .. } => "NonIntegralBound",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::EndpointMismatch(_) => "EndpointMismatch",
            Error::NotHarmonic => "NotHarmonic",
            Error::ClassMismatch(_) => "ClassMismatch",
            Error::Format(_) => "Format",
        }
    }
}
