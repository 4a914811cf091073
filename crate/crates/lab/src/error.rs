use std::path::PathBuf;

use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("invalid configuration: {}", .0.join("; "))]
    Config(Vec<String>),

    #[error("cannot access {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("cannot parse {}: {message}", path.display())]
    Parse { path: PathBuf, message: String },

    #[error(transparent)]
    Core(#[from] cpb_core::Error),
}

impl LabError {
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) | LabError::Parse { .. } => 2,
            LabError::Io { .. } | LabError::Core(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LabError::Config(_) => "config",
            LabError::Io { .. } => "io",
            LabError::Parse { .. } => "parse",
            LabError::Core(_) => "computation",
        }
    }

    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> Value {
        let errors: Vec<String> = match self {
            LabError::Config(list) => list.clone(),
            other => vec![other.to_string()],
        };
        json!({ "status": "error", "kind": self.kind(), "errors": errors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_errors_keep_every_entry() {
        let e = LabError::Config(vec!["a: bad".into(), "b: bad".into()]);
        assert_eq!(e.exit_code(), 2);
        assert_eq!(e.to_json()["errors"].as_array().unwrap().len(), 2);
        assert_eq!(LabError::Core(cpb_core::Error::NonFinite("x")).exit_code(), 1);
    }
}
