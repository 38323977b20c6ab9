use thiserror::Error;

/// Errors surfaced by the harness. [`exit_code`](HarnessError::exit_code)
/// maps them onto the CLI contract: 1 for bad input, 2 for bad configuration.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Graph(#[from] bcd_core::Error),

    #[error("unknown vertex label {0}")]
    UnknownVertex(u64),

    #[error("failed to parse report: {0}")]
    Report(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Graph(bcd_core::Error::InvalidParameter(_)) => 2,
            _ => 1,
        }
    }
}
