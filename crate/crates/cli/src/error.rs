use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("resource cap: {0}")]
    ResourceCap(String),

    #[error("assertion failure: {0}")]
    Assertion(String),

    #[error(transparent)]
    Core(cutset_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<cutset_core::Error> for CliError {
    fn from(e: cutset_core::Error) -> Self {
        match e {
            cutset_core::Error::ResourceCap { .. } => CliError::ResourceCap(e.to_string()),
            cutset_core::Error::Assertion(m) => CliError::Assertion(m),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    /// 2 config, 3 resource cap, 4 assertion failure, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::ResourceCap(_) => 3,
            CliError::Assertion(_) => 4,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}
