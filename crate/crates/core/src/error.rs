use thiserror::Error;

/// Errors raised by every layer of the engine.
///
/// Evaluation errors carry enough context to be reported per sample; the
/// harness never aborts a suite because of one of them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain: {0}")]
    Domain(String),
    #[error("truncation: {0}")]
    Truncation(String),
    #[error("series is not invertible: leading coefficient is zero")]
    NotInvertible,
    #[error("factor {0} has zero constant term and cannot be inverted")]
    NonFormalUnit(String),
    #[error("parse error at line {line}, column {column}: expected {}", expected.join(" | "))]
    Parse {
        line: usize,
        column: usize,
        expected: Vec<String>,
    },
    #[error("precondition violated: {0}")]
    Precond(String),
    #[error("no identity with id `{0}`")]
    NotFound(String),
    #[error("sampling exhausted for `{0}` after {1} redraws")]
    SamplingExhausted(String, usize),
    #[error("mode {mode} not supported by `{id}`")]
    UnsupportedMode { id: String, mode: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{id}: {source}")]
    InRecord {
        id: String,
        #[source]
        source: Box<QError>,
    },
}

impl QError {
    pub fn in_record(self, id: &str) -> QError {
        match self {
            e @ QError::InRecord { .. } => e,
            e => QError::InRecord {
                id: id.to_string(),
                source: Box::new(e),
            },
        }
    }

    /// The innermost error, with any record annotation stripped.
    pub fn root(&self) -> &QError {
        match self {
            QError::InRecord { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, QError>;
