use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("ParseError at {at}: {message}")]
    Parse { at: String, message: String },
    #[error("ValidationError: {0}")]
    Validation(String),
    #[error("{0}")]
    Engine(#[from] gorenstein::Error),
    #[error("IoError: {0}")]
    Io(String),
    #[error("Panic: {0}")]
    Panic(String),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::Validation(_) => "ValidationError",
            CliError::Engine(e) => e.name(),
            CliError::Io(_) => "IoError",
            CliError::Panic(_) => "Panic",
        }
    }

    /// 2 for rejected input, 1 for failures during computation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Validation(_) => 2,
            CliError::Engine(e) if e.is_validation() => 2,
            _ => 1,
        }
    }
}
