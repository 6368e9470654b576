use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("duplicate vertex '{0}'")]
    DuplicateVertex(String),
    #[error("duplicate edge '{0}'")]
    DuplicateEdge(String),
    #[error("unknown vertex '{vertex}' in edge '{edge}'")]
    UnknownVertex { vertex: String, edge: String },
    #[error("edge '{edge}' has weight {weight}; weights must be at least 1")]
    InvalidWeight { edge: String, weight: i64 },
    #[error("{0} (line {1})")]
    Parse(String, usize),

    #[error("vertex '{0}' is a sink")]
    Sink(String),
    #[error("vertex set is not hereditary: '{0}' reaches '{1}' outside the set")]
    NotHereditary(String, String),
    #[error("edge '{0}' is not weighted")]
    NotWeighted(String),
    #[error("graph has weighted edges")]
    NotUnweighted,
    #[error("graph has a quasi-cycle (the algebra is infinite-dimensional)")]
    NotAquasicyclic,
    #[error("graph has a cycle")]
    NotAcyclic,
    #[error("invalid base choice at '{vertex}': {reason}")]
    InvalidBase { vertex: String, reason: String },
    #[error("image map does not match the replaced vertex set: {0}")]
    ImageMismatch(String),
    #[error("unknown name '{0}'")]
    UnknownName(String),
    #[error("arithmetic overflow while counting {0}")]
    Overflow(&'static str),

    /// A structural guarantee of the theory failed to hold. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

macro_rules! ensure_internal {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::error::Error::Internal(format!($($arg)*)));
        }
    };
}
pub(crate) use ensure_internal;
