use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("config syntax: {0}")]
    Syntax(String),

    #[error("unknown key `{0}`")]
    UnknownKey(String),

    #[error("key `{key}`: expected {expected}, found {found}")]
    TypeMismatch {
        key: String,
        expected: &'static str,
        found: &'static str,
    },

    #[error("missing required key `{0}`")]
    MissingKey(String),

    #[error("key `{key}`: {reason}")]
    InvalidValue { key: String, reason: String },

    #[error("config declares command `{declared}` but `{invoked}` was invoked")]
    CommandMismatch {
        declared: &'static str,
        invoked: &'static str,
    },

    /// A domain error, with the parameters of the row that raised it.
    #[error("{context}: {source}")]
    Domain {
        context: String,
        source: worldtube::Error,
    },

    #[error("{path}: {reason}")]
    Io { path: String, reason: String },
}

impl CliError {
    pub fn domain(context: impl Into<String>) -> impl FnOnce(worldtube::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Domain { context, source }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
