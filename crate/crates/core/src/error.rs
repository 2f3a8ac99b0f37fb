use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("edge ({0}, {1}) is not present in the graph")]
    MissingEdge(usize, usize),

    #[error("invalid parameters: {0}")]
    InvalidParameter(String),

    #[error("{what} is {size}, above the supported ceiling of {limit}")]
    SizeCeiling {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// An exhaustive loop would exceed its configured bound. Never silently truncated.
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: u64,
    },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A self-check failed; this indicates a bug, not bad input.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::SizeCeiling { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
