use thiserror::Error;

/// Errors raised by the library. Every variant names the module it came from
/// so the CLI can report provenance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rootsys: invalid root system {label}{rank}")]
    InvalidType { label: String, rank: usize },
    #[error("{module}: rank mismatch (expected {expected}, found {found})")]
    RankMismatch {
        module: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{module}: index {index} out of range 1..={bound}")]
    IndexOutOfRange {
        module: &'static str,
        index: usize,
        bound: usize,
    },
    #[error("{module}: resource limit exceeded: {what} needs {needed}, limit {limit}")]
    ResourceLimit {
        module: &'static str,
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("{module}: precondition violated: {reason}")]
    Precondition { module: &'static str, reason: String },
    #[error("{module}: operands belong to different algebras or subalgebras")]
    Mismatch { module: &'static str },
    #[error("chevalley: invalid structure-constant table: {0}")]
    InvalidStructureConstants(String),
    #[error("complexflag: {0}")]
    Chain(#[from] crate::complexflag::ChainError),
}

impl Error {
    pub fn module(&self) -> &'static str {
        match self {
            Error::InvalidType { .. } => "rootsys",
            Error::RankMismatch { module, .. }
            | Error::IndexOutOfRange { module, .. }
            | Error::ResourceLimit { module, .. }
            | Error::Precondition { module, .. }
            | Error::Mismatch { module } => module,
            Error::InvalidStructureConstants(_) => "chevalley",
            Error::Chain(_) => "complexflag",
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }

    pub(crate) fn precondition(module: &'static str, reason: impl Into<String>) -> Self {
        Error::Precondition {
            module,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
