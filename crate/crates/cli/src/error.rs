use pto_core::PtError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("{0}")]
    Model(#[from] PtError),

    #[error("validation failed: {0}")]
    Breach(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 success, 2 usage, 3 domain or precondition, 4 tolerance breach.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(e) => match e {
                PtError::InvalidParameter(_) | PtError::Domain(_) | PtError::Resource { .. } => 3,
                _ => 1,
            },
            CliError::Breach(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}
