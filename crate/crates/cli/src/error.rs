use std::path::PathBuf;

use thiserror::Error;

/// Failures that map to exit status 3.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },

    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: ssprop_core::Error },

    #[error(transparent)]
    Core(#[from] ssprop_core::Error),
}
