use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{what} has size {size}, exceeding the configured cap of {cap}")]
    Capacity {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("sequence did not stabilize within horizon {horizon}")]
    NotStabilized { horizon: usize },
}
