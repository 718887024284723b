use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("`zeta` needs a cyclotomic field, not {field}")]
    FieldMismatch { field: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] comdyn_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("bad file contents: {0}")]
    Format(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "SyntaxError",
            CliError::UnknownVariable { .. } => "UnknownVariable",
            CliError::FieldMismatch { .. } => "FieldMismatch",
            CliError::Usage(_) => "UsageError",
            CliError::Core(e) => e.kind(),
            CliError::Io { .. } => "IoError",
            CliError::Format(_) => "FormatError",
        }
    }

    /// 2 for bad input on the command line, 1 for errors from the computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::UnknownVariable { .. } | CliError::FieldMismatch { .. } | CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({ "error": { "kind": self.kind(), "message": self.to_string() } });
        if let CliError::Syntax { pos, .. } | CliError::UnknownVariable { pos, .. } = self {
            obj["error"]["position"] = json!(pos);
        }
        obj
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
