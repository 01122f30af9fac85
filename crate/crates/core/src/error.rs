use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail")]
pub enum Error {
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("curve is not invariant: {0}")]
    NotInvariant(String),
    #[error("blow-up budget of {0} exhausted")]
    BudgetExceeded(usize),
    #[error("missing index: {0}")]
    MissingIndex(String),
    #[error("difference is not a multiple of Omega: {0}")]
    NotProportional(String),
    #[error("extension schedule incomplete: {0}")]
    ScheduleIncomplete(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::DivisionByZero(_) => "DivisionByZero",
            Error::NotInvariant(_) => "NotInvariant",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::MissingIndex(_) => "MissingIndex",
            Error::NotProportional(_) => "NotProportional",
            Error::ScheduleIncomplete(_) => "ScheduleIncomplete",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
