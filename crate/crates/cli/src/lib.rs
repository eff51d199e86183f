//! Experiment runners behind the `wickwalk` binary. Each command writes its
//! artifacts plus a `manifest.json` into the configured output directory
//! and returns a report whose `passed` flag decides the exit code.

pub mod artifacts;
pub mod commands;
pub mod config;
pub mod error;

pub use config::{Overrides, RunConfig};
pub use error::{CliError, CliResult, EXIT_IO, EXIT_OK, EXIT_STATISTICAL, EXIT_USAGE};
