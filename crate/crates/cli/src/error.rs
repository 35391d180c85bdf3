use serde_json::{json, Value};
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] holodep_core::Error),

    #[error("usage: {0}")]
    Usage(String),

    #[error("no fixtures found in {}", dir.display())]
    MissingFixture { dir: PathBuf },

    #[error("cannot read {}: {message}", path.display())]
    Io { path: PathBuf, message: String },

    #[error("invalid JSON in {}: {message}", path.display())]
    Json { path: PathBuf, message: String },
}

impl CliError {
    /// Variant name, e.g. `NotAFixedPoint`.
    pub fn kind(&self) -> String {
        match self {
            CliError::Core(e) => {
                let debug = format!("{e:?}");
                debug
                    .split(|c: char| !c.is_alphanumeric())
                    .next()
                    .unwrap_or_default()
                    .to_string()
            }
            CliError::Usage(_) => "Usage".into(),
            CliError::MissingFixture { .. } => "MissingFixture".into(),
            CliError::Io { .. } => "Io".into(),
            CliError::Json { .. } => "Json".into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => crate::EXIT_USAGE,
            _ => crate::EXIT_ERROR,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"kind": self.kind(), "message": self.to_string()}})
    }
}
