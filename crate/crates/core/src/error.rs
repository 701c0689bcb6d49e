use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the factorization pipeline. Node indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("node index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("self-loop at node {0}")]
    SelfLoop(usize),

    #[error("graph is disconnected: node {unreachable} is unreachable from node 1")]
    Disconnected { unreachable: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows} rows, row {row} has {cols} entries)")]
    NonSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },

    #[error("factor is singular and has no inverse")]
    SingularFactor,

    #[error("operation not supported for {0} factors")]
    UnsupportedFactorKind(&'static str),

    #[error("factor {round} is not local: entry ({row},{col}) couples non-adjacent nodes")]
    NonLocalFactor {
        round: usize,
        row: usize,
        col: usize,
    },

    #[error("invalid factor: {0}")]
    InvalidFactor(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
