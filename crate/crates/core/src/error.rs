use std::path::PathBuf;

/// Errors raised by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("catalog parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error for family {id}, field `{field}`: {reason}")]
    Validation {
        id: u32,
        field: &'static str,
        reason: String,
    },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown family {0}")]
    UnknownFamily(u32),

    #[error("classification error: {0}")]
    Classification(String),

    #[error("family {id}: not quasismooth at vertex p{vertex}")]
    NotQuasismooth { id: u32, vertex: usize },

    #[error("family {id}: non-isolated singularity along edge p{}p{}", .edge.0, .edge.1)]
    NonIsolated { id: u32, edge: (usize, usize) },

    #[error("vanishing order undefined: {0}")]
    OrderUndefined(String),

    #[error("family {0}: standard form unsolvable")]
    StandardFormUnsolvable(u32),

    #[error("family {id}, center {center}: uncovered case, {missing}")]
    Uncovered {
        id: u32,
        center: String,
        missing: String,
    },

    #[error("family {id}: {reason}")]
    Dispatch { id: u32, reason: String },

    #[error("certificate does not apply: {0}")]
    NeedsFallback(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}
