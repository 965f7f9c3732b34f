use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    /// A precondition on the mathematical domain failed, e.g. a graph with a 4-cycle
    /// handed to an operation that only applies to 4-cycle-free graphs.
    #[error("domain error: {0}")]
    Domain(String),
    /// The caller broke an operation's contract (non-zero-sum Γ, identity error, ...).
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::Parse(_) => "parse",
            Error::Unsupported(_) => "unsupported",
            Error::Domain(_) => "domain",
            Error::Contract(_) => "contract",
            Error::Budget(_) => "budget",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
