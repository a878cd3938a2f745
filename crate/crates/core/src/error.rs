use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Unsupported type, rank or twist.
    #[error("configuration error: {0}")]
    Config(String),
    /// An argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A required upstream result (e.g. a certificate) is missing.
    #[error("dependency error: {0}")]
    Dependency(String),
    #[error("no certified representative for class {class_id} within d_max = {d_max}")]
    ExistenceFailure { class_id: usize, d_max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
