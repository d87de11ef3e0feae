use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    MalformedJson,
    NotPrime,
    UnsupportedField,
    SingularAction,
    NotHomomorphism,
    #[serde(rename = "invalid-lgroup")]
    InvalidLGroup,
    UnresolvedName,
    Cycle,
    InvalidModule,
    BudgetExceeded,
    Usage,
    Io,
}

#[derive(Debug, thiserror::Error)]
pub enum HopfmodError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {message}")]
    Invalid {
        kind: ErrorKind,
        location: String,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl HopfmodError {
    pub fn usage(message: impl Into<String>) -> Self {
        HopfmodError::Invalid {
            kind: ErrorKind::Usage,
            location: "arguments".into(),
            message: message.into(),
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            HopfmodError::Json { .. } => ErrorKind::MalformedJson,
            HopfmodError::Invalid { kind, .. } => *kind,
            HopfmodError::Io { .. } => ErrorKind::Io,
        }
    }

    /// Machine-readable form.
    pub fn to_json(&self) -> Value {
        let location = match self {
            HopfmodError::Json { line, column, .. } => json!({ "line": line, "column": column }),
            HopfmodError::Invalid { location, .. } => json!(location),
            HopfmodError::Io { path, .. } => json!(path),
        };
        let message = match self {
            HopfmodError::Json { message, .. } | HopfmodError::Invalid { message, .. } => {
                message.clone()
            }
            HopfmodError::Io { source, .. } => source.to_string(),
        };
        json!({ "kind": self.kind(), "location": location, "message": message })
    }
}
