use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series diverges at x = {0} (need 0 <= x < 1)")]
    Divergence(f64),

    #[error(
        "degenerate table: every coefficient with s >= 2 is zero, so a/C(a) increases \
         towards 1 as a grows and the optimization over a is vacuous (bound is 1/V_d(R) in |z|)"
    )]
    DegenerateTable,

    #[error("invalid degree sequence: {0}")]
    InvalidSequence(String),

    #[error("unsupported size n = {0}: Pruefer enumeration supports 2 <= n <= 9")]
    UnsupportedSize(usize),

    #[error("integer overflow while counting trees for n = {0}")]
    Overflow(usize),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
}

impl Error {
    /// Stable identifier printed by the CLI on failure.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidDimension(_) => "E_DIMENSION",
            Error::InvalidConfiguration(_) => "E_CONFIG",
            Error::InvalidArgument(_) => "E_ARGUMENT",
            Error::Divergence(_) => "E_DIVERGENCE",
            Error::DegenerateTable => "E_DEGENERATE",
            Error::InvalidSequence(_) => "E_SEQUENCE",
            Error::UnsupportedSize(_) => "E_SIZE",
            Error::Overflow(_) => "E_OVERFLOW",
            Error::Io { .. } => "E_IO",
            Error::Parse { .. } => "E_PARSE",
        }
    }

    /// Process exit status: 1 usage, 2 I/O, 3 numeric/degenerate.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidDimension(_)
            | Error::InvalidConfiguration(_)
            | Error::InvalidArgument(_)
            | Error::UnsupportedSize(_) => 1,
            Error::Io { .. } | Error::Parse { .. } => 2,
            Error::Divergence(_)
            | Error::DegenerateTable
            | Error::InvalidSequence(_)
            | Error::Overflow(_) => 3,
        }
    }
}
