use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in a computation.
///
/// Variants fall into three families that the command line front end maps
/// to distinct exit codes: input validation, resource/stabilization limits,
/// and internal assertion failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("zero denominator at byte {offset}")]
    ZeroDenominator { offset: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("ideal has infinite colength: variable `{0}` has no pure power in the leading-term ideal")]
    InfiniteColength(String),
    #[error("ideal is not supported at the origin: {0}")]
    NotOriginSupported(String),
    #[error("branch truncation insufficient: all pullbacks vanish below order {0}")]
    TruncationInsufficient(usize),
    #[error("missing intersection number for `{0}`")]
    MissingTableKey(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no stabilization: {0}")]
    NotStabilized(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Limit,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::BudgetExceeded(_) | Error::NotStabilized(_) => ErrorKind::Limit,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }
}
