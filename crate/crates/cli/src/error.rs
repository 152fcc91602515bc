use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("job file line {line}: {message}")]
    Job { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] regpow::Error),
    #[error("{0} corpus job(s) differ from their goldens")]
    GoldenMismatch(usize),
}

impl CliError {
    /// 1 for parse and validation problems, 2 for exhausted budgets,
    /// 3 for golden mismatches.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_budget() => 2,
            CliError::GoldenMismatch(_) => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
