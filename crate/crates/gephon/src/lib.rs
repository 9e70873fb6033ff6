//! Configuration, sweeps, table reproduction and CSV/SVG output for the
//! `gephon-core` models.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod reproduce;
pub mod svg;
pub mod sweeps;
pub mod table;

use std::fs;
use std::path::{Path, PathBuf};

pub use config::{ConfigError, RunConfig, SweepRange};
pub use error::RunError;
pub use reproduce::{reproduce, Reproduction, TableId};
pub use svg::{emit_svg, PlotSpec};
pub use table::{Provenance, SweepResult};

/// Writes `contents` to `dir/name`, creating `dir` if needed.
pub fn write_output(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, RunError> {
    fs::create_dir_all(dir).map_err(|e| RunError::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| RunError::io(&path, e))?;
    Ok(path)
}
