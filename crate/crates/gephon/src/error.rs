use std::path::PathBuf;

use gephon_core::bus::BusError;
use gephon_core::cavity::CavityError;
use gephon_core::device::DeviceError;
use gephon_core::lattice::LatticeError;

use crate::config::ConfigError;
use crate::svg::SvgError;
use crate::table::TableError;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(#[from] ConfigError),
    #[error("device model: {0}")]
    Device(#[from] DeviceError),
    #[error("lattice solver: {0}")]
    Lattice(#[from] LatticeError),
    #[error("cavity model: {0}")]
    Cavity(#[from] CavityError),
    #[error("phonon bus: {0}")]
    Bus(#[from] BusError),
    #[error("table: {0}")]
    Table(#[from] TableError),
    #[error("plot: {0}")]
    Svg(#[from] SvgError),
    #[error("{path}: {reason}")]
    Io { path: PathBuf, reason: String },
    #[error("{0} reproduced cell(s) do not match the published values")]
    Mismatch(usize),
}

impl RunError {
    /// 1 for bad input, 2 for model-validity failures, 3 for strict
    /// reproduction mismatches.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::Table(_) | Self::Svg(_) | Self::Io { .. } => 1,
            Self::Device(_) | Self::Lattice(_) | Self::Cavity(_) | Self::Bus(_) => 2,
            Self::Mismatch(_) => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, err: std::io::Error) -> Self {
        Self::Io { path: path.into(), reason: err.to_string() }
    }
}
