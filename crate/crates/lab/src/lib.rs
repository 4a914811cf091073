//! Command-line front end for `cpb-core`: config files, parameter sweeps and
//! reproducible CSV/JSON output.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::{Path, PathBuf};

pub use config::RunConfig;
pub use error::LabError;
pub use output::Report;

/// Validate, compute and write the artifacts of one run.
pub fn execute(cfg: &RunConfig, dir: &Path, stem: &str) -> Result<Vec<PathBuf>, LabError> {
    let report = commands::run(cfg)?;
    output::write_report(cfg, &report, dir, stem)
}
