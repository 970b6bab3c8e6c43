//! File formats, report rendering and commands behind the `pontryagin` binary.

pub mod commands;
pub mod formats;
pub mod report;
pub mod suite;

use std::path::PathBuf;

/// Failures that map to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format {
        path: PathBuf,
        source: formats::FormatError,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] pontryagin_core::Error),
}

/// A finished command: the report and whether every asserted check held.
pub struct Outcome {
    pub report: serde_json::Value,
    pub success: bool,
}

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
