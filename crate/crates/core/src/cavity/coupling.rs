use core::f64::consts::PI;

use super::relaxation::{t1_golden_rule, Bottleneck, DensityOfStates};
use super::{overlap_normalized, CavityError, CavityMode, QubitEnvelope};
use crate::device::{t1_powerlaw, DeviceModelParams};
use crate::lattice::MaterialSpec;
use crate::units::{HBAR_J_S, PLANCK_UEV_NS};

/// Zero-point strain of a mode of volume `volume_um3`: ε_zp = q·x_zp with
/// x_zp = sqrt(ħ / (2ρVω)) and q = ω / v_s.
pub fn zero_point_strain(f_ghz: f64, material: &MaterialSpec, volume_um3: f64) -> f64 {
    let omega = 2.0 * PI * f_ghz * 1e9;
    let volume = volume_um3 * 1e-18;
    let x_zp = libm::sqrt(HBAR_J_S / (2.0 * material.rho * volume * omega));
    omega / material.v_s * x_zp
}

/// g_sp = D_eff · ε_zp · O / h, MHz.
pub fn g_sp_from_overlap(overlap: f64, eps_zp: f64, d_eff_uev: f64) -> f64 {
    d_eff_uev * eps_zp * overlap / PLANCK_UEV_NS * 1e3
}

/// Effective deformation potential (µeV) that makes [`g_sp_from_overlap`]
/// return `target_g_sp_mhz` for the given overlap and zero-point strain.
pub fn calibrate_deformation_potential(target_g_sp_mhz: f64, overlap: f64, eps_zp: f64) -> f64 {
    target_g_sp_mhz * 1e-3 * PLANCK_UEV_NS / (eps_zp * overlap)
}

/// Phonon-bottleneck form factor (qL)² exp(-(qL)²/4), normalized to a
/// peak of 1 at qL = 2. q = 2πf / v_s.
pub fn bottleneck_form_factor(f_ghz: f64, dot_length_nm: f64, material: &MaterialSpec) -> f64 {
    // v_s in m/s is nm·GHz
    let x = 2.0 * PI * f_ghz * dot_length_nm / material.v_s;
    let x2 = x * x;
    x2 * libm::exp(-0.25 * x2) / (4.0 * libm::exp(-1.0))
}

/// Inputs of the overlap → g_sp → T1 chain beyond the mode and envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSetup {
    /// Effective deformation potential, µeV. Fixed once by calibration.
    pub d_eff_uev: f64,
    /// Mode volume for the zero-point strain, µm³.
    pub mode_volume_um3: f64,
    /// Qubit detuning for the in-gap T1, in cavity linewidths.
    pub ingap_detuning_linewidths: f64,
    /// Apply the bottleneck form factor to the bulk density of states.
    pub bottleneck: bool,
}

impl Default for CouplingSetup {
    fn default() -> Self {
        Self { d_eff_uev: 0.0, mode_volume_um3: 0.25, ingap_detuning_linewidths: 50.0, bottleneck: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingResult {
    pub overlap_norm: f64,
    pub eps_zp: f64,
    /// Spin–phonon matrix element, µeV.
    pub m_sp_uev: f64,
    pub g_sp_mhz: f64,
    /// Bulk density of states, calibrated to the power-law T1 at f_opt, ms.
    pub t1_bulk_ms: f64,
    /// Qubit on resonance with the cavity mode, ms.
    pub t1_cavity_resonant_ms: f64,
    /// Qubit detuned into the gap, ms.
    pub t1_ingap_ms: f64,
}

/// Overlap, coupling and the three relaxation times for a qubit sitting in
/// `mode`. The bulk density of states is scaled so that, for this matrix
/// element, T1 at `params.f_opt` equals the power-law model there.
pub fn evaluate_coupling(
    mode: &CavityMode,
    qubit: &QubitEnvelope,
    material: &MaterialSpec,
    setup: &CouplingSetup,
    params: &DeviceModelParams,
) -> Result<CouplingResult, CavityError> {
    if !(mode.q > 0.0) {
        return Err(CavityError::InvalidParameter("mode Q must be positive"));
    }
    let overlap = overlap_normalized(mode, qubit)?;
    let eps_zp = zero_point_strain(mode.f_ghz, material, setup.mode_volume_um3);
    let g_sp = g_sp_from_overlap(overlap, eps_zp, setup.d_eff_uev);
    let m_sp = g_sp * 1e-3 * PLANCK_UEV_NS;

    let bottleneck = setup.bottleneck.then_some(Bottleneck { dot_length_nm: qubit.dot_length_nm, material: *material });
    let bulk = DensityOfStates::bulk_calibrated(m_sp, params.f_opt, t1_powerlaw(params.f_opt, params), bottleneck)?;
    let cavity = DensityOfStates::Cavity { f_mode_ghz: mode.f_ghz, q: mode.q };
    let linewidth_ghz = mode.f_ghz / mode.q;

    Ok(CouplingResult {
        overlap_norm: overlap,
        eps_zp,
        m_sp_uev: m_sp,
        g_sp_mhz: g_sp,
        t1_bulk_ms: t1_golden_rule(m_sp, mode.f_ghz, &bulk)?,
        t1_cavity_resonant_ms: t1_golden_rule(m_sp, mode.f_ghz, &cavity)?,
        t1_ingap_ms: t1_golden_rule(m_sp, mode.f_ghz + setup.ingap_detuning_linewidths * linewidth_ghz, &cavity)?,
    })
}
