use std::path::PathBuf;

use thiserror::Error;

use crate::annotate::ValidationReport;
use crate::treeops::{ParseError, PatternError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("corpus line {line}: malformed JSON: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },

    #[error("corpus line {line}: {report}")]
    Invalid { line: usize, report: ValidationReport },

    #[error("corpus line {line}: duplicate essay id `{id}`")]
    DuplicateId { line: usize, id: String },

    #[error(transparent)]
    Tree(#[from] ParseError),

    #[error(transparent)]
    Pattern(#[from] PatternError),

    /// An annotation layer a feature group depends on is absent.
    #[error("essay `{essay}`: {group} needs the {layer} layer ({detail})")]
    MissingLayer {
        essay: String,
        layer: &'static str,
        group: &'static str,
        detail: String,
    },

    /// A resource file (lexicon, dictionary) a feature group depends on was not supplied.
    #[error("{group} needs a {resource}")]
    MissingResource {
        resource: &'static str,
        group: &'static str,
    },

    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("degenerate training data: {0}")]
    Degenerate(String),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// True for failures caused by how the tool was configured rather than by the data.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_) | Error::MissingResource { .. } | Error::Pattern(_)
        )
    }
}
