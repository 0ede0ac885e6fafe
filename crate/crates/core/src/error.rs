use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("{0} vertices exceeds the supported maximum of 64")]
    TooManyVertices(usize),
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("host cycle has even length {0}")]
    EvenHostCycle(usize),
    #[error("chords lie on different host cycles")]
    HostMismatch,
    #[error("chord endpoint at position {position} lies outside the window of {window} positions")]
    ChordOutsideWindow { position: usize, window: usize },
    #[error("graph is acyclic")]
    Acyclic,
    #[error("enumeration of {n}-vertex graphs exceeds the cap of {cap} for this mode")]
    EnumerationCap { n: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
