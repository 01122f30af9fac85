use serde::Serialize;

use folres_core::Error;

pub const EXIT_PARSE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_FIELD: i32 = 3;
pub const EXIT_NOT_RESOLVED: i32 = 4;
pub const EXIT_NOT_PROPORTIONAL: i32 = 5;
/// A check ran to completion and failed.
pub const EXIT_CHECK_FAILED: i32 = 6;

/// Failure carried to the process boundary and printed as JSON on stderr.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

impl CliError {
    pub fn new(kind: &str, message: impl Into<String>, exit_code: i32) -> Self {
        CliError { kind: kind.into(), message: message.into(), exit_code }
    }

    pub fn parse(e: impl std::fmt::Display) -> Self {
        Self::new("Parse", e.to_string(), EXIT_PARSE)
    }

    pub fn io(path: &str, e: std::io::Error) -> Self {
        Self::new("Io", format!("{path}: {e}"), EXIT_PARSE)
    }

    pub fn from_core(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => EXIT_BUDGET,
            Error::UnsupportedField(_) => EXIT_FIELD,
            Error::NotProportional(_) => EXIT_NOT_PROPORTIONAL,
            Error::ScheduleIncomplete(_) | Error::MissingIndex(_) => EXIT_CHECK_FAILED,
            _ => EXIT_PARSE,
        };
        Self::new(e.kind(), e.to_string(), code)
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self }).to_string()
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}
