use std::path::PathBuf;

use crate::cache::CacheError;
use crate::dsl::DslError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const PRECONDITION: i32 = 3;
    pub const VERIFICATION: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{rendered}")]
    Dsl { path: String, rendered: String, source: DslError },
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] jetvar::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Cache(#[from] CacheError),
}

impl CliError {
    pub fn dsl(path: &str, source_text: &str, err: DslError) -> Self {
        CliError::Dsl { path: path.to_string(), rendered: err.render(source_text), source: err }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Dsl { .. } | CliError::Input(_) => exit::PARSE,
            CliError::Core(_) => exit::PRECONDITION,
            CliError::Read { .. } | CliError::Cache(_) => exit::IO,
        }
    }
}
