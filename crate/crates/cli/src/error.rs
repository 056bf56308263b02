use std::fmt;

/// Process exit statuses.
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_IO: i32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Validation,
    Numeric,
    Io,
}

impl Kind {
    pub fn exit_code(self) -> i32 {
        match self {
            Kind::Validation => EXIT_VALIDATION,
            Kind::Numeric => EXIT_NUMERIC,
            Kind::Io => EXIT_IO,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Kind::Validation => "validation",
            Kind::Numeric => "numeric",
            Kind::Io => "io",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        Self { kind: Kind::Validation, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { kind: Kind::Io, message: message.into() }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": self.kind.label(),
            "message": self.message,
            "exit_code": self.kind.exit_code(),
        })
        .to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} error: {}", self.kind.label(), self.message)
    }
}

impl From<levytandem::Error> for CliError {
    fn from(e: levytandem::Error) -> Self {
        let kind = if e.is_validation() { Kind::Validation } else { Kind::Numeric };
        Self { kind, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
