//! Front end for `limitshape`: reads a JSON run configuration and writes
//! deterministic JSON, CSV and SVG artifacts.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub mod commands;
pub mod config;
pub mod plot;
pub mod table;

pub use commands::{cmd_arctic, cmd_fourvertex, cmd_solve, cmd_surface};
pub use config::{ModelConfig, RunConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] limitshape::Error),
    #[error("{0}")]
    Unsupported(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }
}

/// One output file held in memory until written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Solve,
    Surface,
    Arctic,
    Fourvertex,
}

pub fn run(command: Command, config: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    match command {
        Command::Solve => cmd_solve(config),
        Command::Surface => cmd_surface(config),
        Command::Arctic => cmd_arctic(config),
        Command::Fourvertex => cmd_fourvertex(config),
    }
}

pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    artifacts
        .iter()
        .map(|a| {
            let path = dir.join(&a.name);
            fs::write(&path, &a.contents).map_err(|e| CliError::io(&path, e))?;
            Ok(path)
        })
        .collect()
}
