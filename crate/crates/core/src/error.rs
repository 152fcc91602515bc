use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("coefficient {0} is not invertible in the coefficient field")]
    NotInvertible(String),

    #[error("computation budget exceeded: {0}")]
    Budget(String),

    #[error("ideal is not equigenerated: {0}")]
    NotEquigenerated(String),

    #[error("module is not Cohen-Macaulay")]
    NotCohenMacaulay,

    #[error("zero module")]
    ZeroModule,

    #[error("no valid certificate: {0}")]
    NoCertificate(String),

    #[error("table too short: need at least {needed} rows, have {have}")]
    TableTooShort { needed: usize, have: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
