use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("generators have gcd {gcd}; the generated monoid has infinite complement (add a truncation)")]
    NonCofinite { gcd: u64 },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("membership window of {size} integers exceeds the supported limit")]
    WindowTooLarge { size: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    /// A construction hypothesis failed; `clause` names the first failing one.
    #[error("hypothesis violated: {clause}")]
    Hypothesis { clause: String },

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn hypothesis(clause: impl Into<String>) -> Self {
        Error::Hypothesis {
            clause: clause.into(),
        }
    }

    pub(crate) fn parse(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Parse {
            what,
            detail: detail.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
