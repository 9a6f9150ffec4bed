use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Model(#[from] sds_core::Error),

    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for flag and validation problems, 3 for non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(sds_core::Error::NonConvergence { .. }) => 3,
            CliError::Io(_) => 1,
            _ => 2,
        }
    }
}
