use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    /// A requested enumeration exceeds the configured size bounds.
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Core(#[from] weylbraid_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
