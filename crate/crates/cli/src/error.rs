use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical abort: {0}")]
    Numerical(nlqsl_core::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 1,
        }
    }

    pub(crate) fn field(name: &str, msg: impl std::fmt::Display) -> Self {
        CliError::Config(format!("{name}: {msg}"))
    }
}

/// Problems the user can fix by changing parameters map to config errors;
/// failures that only show up while integrating are numerical aborts.
impl From<nlqsl_core::Error> for CliError {
    fn from(e: nlqsl_core::Error) -> Self {
        use nlqsl_core::Error as E;
        match e {
            E::NormDrift { .. } | E::NonFiniteState | E::NotNormalized { .. } | E::Quadrature { .. } => {
                CliError::Numerical(e)
            }
            other => CliError::Config(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
