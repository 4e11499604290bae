use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("line {line}: {source}")]
    Line { line: usize, source: profree_core::Error },

    #[error("line {line}: {message}")]
    Usage { line: usize, message: String },

    #[error("expected {expected} input values, found {found}")]
    Arity { expected: usize, found: usize },

    #[error(transparent)]
    Core(#[from] profree_core::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

impl CliError {
    /// Attaches a line number, lifting positional core errors into
    /// [`CliError::Parse`]. `column` is the 1-based start of the parsed text.
    pub fn at(line: usize, column: usize, err: profree_core::Error) -> Self {
        use profree_core::Error as E;
        let shift = |c: usize| c + column - 1;
        match err {
            E::Parse { column: c, message } => CliError::Parse { line, column: shift(c), message },
            E::UnknownVariable { name, column: c } => CliError::Parse {
                line,
                column: shift(c),
                message: format!("unknown variable `{name}`"),
            },
            E::MixedCharts { column: c } => CliError::Parse {
                line,
                column: shift(c),
                message: "variables from different charts".into(),
            },
            source => CliError::Line { line, source },
        }
    }

    /// Usage errors (exit code 2) as opposed to failed checks (exit code 1).
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            CliError::Io { .. } | CliError::UnknownSuite(_) | CliError::Core(profree_core::Error::InvalidParams(_))
        )
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
