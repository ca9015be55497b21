use std::fmt;
use std::path::PathBuf;

/// A located complaint about an input value or file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub file: Option<PathBuf>,
    pub line: Option<usize>,
    pub message: String,
    pub tokens: Vec<String>,
}

impl Diagnostic {
    pub fn new(message: impl Into<String>) -> Self {
        Diagnostic {
            file: None,
            line: None,
            message: message.into(),
            tokens: Vec::new(),
        }
    }

    pub fn at_line(mut self, line: usize) -> Self {
        self.line = Some(line);
        self
    }

    pub fn in_file(mut self, file: impl Into<PathBuf>) -> Self {
        self.file = Some(file.into());
        self
    }

    pub fn with_tokens<I, S>(mut self, tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.tokens = tokens.into_iter().map(Into::into).collect();
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{}:", file.display())?;
        }
        if let Some(line) = self.line {
            write!(f, "{line}:")?;
        }
        if self.file.is_some() || self.line.is_some() {
            write!(f, " ")?;
        }
        write!(f, "{}", self.message)?;
        if !self.tokens.is_empty() {
            write!(f, " [{}]", self.tokens.join(" "))?;
        }
        Ok(())
    }
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid hole: {0}")]
    Hole(String),

    #[error("{}", join_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("automaton must be deterministic")]
    NotDeterministic,

    #[error("variable `{0}` occurs at an inner node")]
    VariableAtInnerNode(String),

    #[error("variable `{0}` has no value")]
    MissingVariable(String),

    #[error("substitution value for `{0}` has an empty language")]
    EmptyValue(String),

    #[error("{what} exceeds the configured limit of {limit}")]
    CapExceeded { what: &'static str, limit: usize },

    #[error("undecidable in general: {0}")]
    Undecidable(&'static str),

    #[error("{0}")]
    Precondition(String),

    #[error("internal check failed: {0}")]
    Internal(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn invalid(diag: Diagnostic) -> Self {
        Error::Invalid(vec![diag])
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
