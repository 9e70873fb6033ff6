//! Cavity-mode/qubit coupling: a synthetic localized strain mode, the
//! normalized overlap with a Gaussian hole envelope, zero-point strain and
//! the resulting spin–phonon rate, and golden-rule relaxation with bulk or
//! cavity-shaped densities of states.

mod coupling;
mod mode;
mod overlap;
mod relaxation;

pub use coupling::{
    bottleneck_form_factor, calibrate_deformation_potential, evaluate_coupling, g_sp_from_overlap, zero_point_strain, CouplingResult, CouplingSetup,
};
pub use mode::{synth_cavity_mode, CavityMode, GridSpec, QubitEnvelope};
pub use overlap::{overlap_normalized, sigma_sweep, SigmaSweep};
pub use relaxation::{t1_golden_rule, Bottleneck, DensityOfStates};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CavityError {
    #[error("grid spacing {spacing_nm} nm does not resolve the mode (need <= {required_nm} nm)")]
    GridTooCoarse { spacing_nm: f64, required_nm: f64 },
    #[error("qubit envelope extends outside the mode grid")]
    QubitOutsideGrid,
    #[error("zero spin-phonon coupling: T1 is infinite")]
    ZeroCoupling,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
