use std::path::{Path, PathBuf};

use boundary_vt::VtError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    File { path: PathBuf, source: VtError },

    #[error(transparent)]
    Vt(#[from] VtError),

    #[error("selftest failed: {0} check(s)")]
    SelfTest(usize),
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::File {
            path: path.to_path_buf(),
            source: VtError::Io(e),
        }
    }

    /// 2 for I/O and decoding failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::File { source, .. } | CliError::Vt(source) if source.is_io() => 2,
            _ => 1,
        }
    }
}

pub trait Context<T> {
    fn at(self, path: &Path) -> Result<T, CliError>;
}

impl<T> Context<T> for Result<T, VtError> {
    fn at(self, path: &Path) -> Result<T, CliError> {
        self.map_err(|source| CliError::File {
            path: path.to_path_buf(),
            source,
        })
    }
}
