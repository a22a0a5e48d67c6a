use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Library(#[from] ckgeo::Error),

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for failures found while computing, 2 for rejected input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(ckgeo::Error::LeftDomain { .. })
            | CliError::Library(ckgeo::Error::NonConvergence { .. })
            | CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
