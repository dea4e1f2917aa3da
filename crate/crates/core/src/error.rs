use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("invalid input: {0}")]
    Structural(String),

    #[error("resource cap exceeded: {what} needs about {estimated} units of work (limit {limit})")]
    ResourceCap { what: String, estimated: u128, limit: u128 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("iteration limit of {0} exceeded")]
    IterationLimit(u64),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
