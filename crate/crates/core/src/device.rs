//! Closed-form device models: Zeeman splitting, field-tunable g-factor and
//! spin–phonon coupling, frequency-dependent T1 and cavity Q, thermal
//! occupancy, linewidths and the dispersive qubit–qubit rate.

use crate::units::{energy_to_frequency, BOHR_MAGNETON_UEV_PER_T, BOLTZMANN_UEV_PER_K, PLANCK_UEV_NS};

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum DeviceError {
    #[error("g-factor model extrapolated past validity: g0 - alpha*E_z = {g} at E_z = {e_z} MV/m")]
    FieldOutOfRange { e_z: f64, g: f64 },
    #[error("E_z = {0} MV/m is not a tabulated field")]
    NotTabulated(f64),
    #[error("quality-factor model is non-positive ({q}) at f = {f_ghz} GHz")]
    ModelOutOfRange { f_ghz: f64, q: f64 },
    #[error("dispersive coupling requires a non-zero detuning")]
    ZeroDetuning,
}

/// Calibration constants of the linear g-factor/coupling fits and the
/// T1 and Q frequency models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceModelParams {
    /// Zero-field g-factor.
    pub g0: f64,
    /// g-factor slope, per MV/m.
    pub alpha: f64,
    /// Zero-field spin–phonon coupling, MHz.
    pub g_sp0: f64,
    /// Coupling slope, MHz per MV/m.
    pub beta: f64,
    /// T1 prefactor, ms·GHz².
    pub c_t1: f64,
    /// Peak cavity quality factor.
    pub q0: f64,
    /// Q curvature, per GHz².
    pub k_curv: f64,
    /// Frequency of peak Q, GHz.
    pub f_opt: f64,
}

impl Default for DeviceModelParams {
    fn default() -> Self {
        Self { g0: 2.0, alpha: 0.7, g_sp0: 0.5, beta: 5.8, c_t1: 36.0, q0: 18_000.0, k_curv: 500.0, f_opt: 6.0 }
    }
}

impl DeviceModelParams {
    pub fn validate(&self) -> Result<(), &'static str> {
        if !(self.g0 > 0.0) {
            return Err("g0 must be positive");
        }
        if !(self.q0 > 0.0) {
            return Err("Q0 must be positive");
        }
        if !(self.c_t1 > 0.0) {
            return Err("C must be positive");
        }
        if !(self.f_opt > 0.0) {
            return Err("f_opt must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// Vertical electric field, MV/m.
    pub e_z: f64,
    /// Magnetic field, T.
    pub b_tesla: f64,
    /// Bath temperature, K.
    pub t_bath: f64,
    /// Phonon/cavity frequency, GHz.
    pub f_phonon: f64,
    /// Qubit–cavity detuning, MHz.
    pub detuning_mhz: f64,
}

impl Default for OperatingPoint {
    fn default() -> Self {
        Self { e_z: 0.0, b_tesla: 0.25, t_bath: 0.1, f_phonon: 6.0, detuning_mhz: 100.0 }
    }
}

/// Microwave control band in GHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlBand {
    pub f_min: f64,
    pub f_max: f64,
}

impl Default for ControlBand {
    fn default() -> Self {
        Self { f_min: 2.0, f_max: 6.0 }
    }
}

impl ControlBand {
    pub fn new(f_min: f64, f_max: f64) -> Option<Self> {
        (f_min < f_max).then_some(Self { f_min, f_max })
    }

    /// Band edges expressed as Zeeman energies, µeV.
    pub fn energy_edges(&self) -> (f64, f64) {
        (self.f_min * PLANCK_UEV_NS, self.f_max * PLANCK_UEV_NS)
    }
}

/// ΔE = g µ_B B, in µeV.
pub fn zeeman_splitting(g: f64, b_tesla: f64) -> f64 {
    g * BOHR_MAGNETON_UEV_PER_T * b_tesla
}

pub fn g_eff(e_z: f64, p: &DeviceModelParams) -> Result<f64, DeviceError> {
    let g = p.g0 - p.alpha * e_z;
    if g <= 0.0 {
        return Err(DeviceError::FieldOutOfRange { e_z, g });
    }
    Ok(g)
}

/// Linear coupling model, MHz.
pub fn g_sp_linear(e_z: f64, p: &DeviceModelParams) -> f64 {
    p.g_sp0 + p.beta * e_z
}

/// Zeeman energy at vertical field `e_z` and magnetic field `b_tesla`, µeV.
pub fn zeeman_at_field(e_z: f64, b_tesla: f64, p: &DeviceModelParams) -> Result<f64, DeviceError> {
    Ok(zeeman_splitting(g_eff(e_z, p)?, b_tesla))
}

/// Published (E_z [MV/m], g-factor, coupling [MHz]) rows.
///
/// The coupling entries at 0.2–0.8 MV/m are not on the linear model line;
/// both are kept and callers choose which to use.
pub const EFIELD_TABLE: [(f64, f64, f64); 6] =
    [(0.0, 2.00, 0.5), (0.2, 1.86, 1.2), (0.4, 1.72, 2.1), (0.6, 1.58, 3.5), (0.8, 1.44, 5.0), (1.0, 1.30, 6.3)];

/// Returns `(g, g_sp MHz)` for a tabulated field.
pub fn table_a1_lookup(e_z: f64) -> Result<(f64, f64), DeviceError> {
    EFIELD_TABLE.iter().find(|row| (row.0 - e_z).abs() < 1e-9).map(|row| (row.1, row.2)).ok_or(DeviceError::NotTabulated(e_z))
}

/// T1 = C / f², ms.
pub fn t1_powerlaw(f_ghz: f64, p: &DeviceModelParams) -> f64 {
    p.c_t1 / (f_ghz * f_ghz)
}

pub fn q_parabolic(f_ghz: f64, p: &DeviceModelParams) -> Result<f64, DeviceError> {
    let d = f_ghz - p.f_opt;
    let q = p.q0 - p.k_curv * d * d;
    if q <= 0.0 {
        return Err(DeviceError::ModelOutOfRange { f_ghz, q });
    }
    Ok(q)
}

/// Bose–Einstein occupancy of a mode at `f_ghz` in a bath at `t_kelvin`.
pub fn bose_occupation(f_ghz: f64, t_kelvin: f64) -> f64 {
    let x = f_ghz * PLANCK_UEV_NS / (BOLTZMANN_UEV_PER_K * t_kelvin);
    // expm1 keeps precision for hf << kT; for hf >> kT this underflows to 0.
    1.0 / libm::expm1(x)
}

/// Temperature-derated T1: the emission rate scales with 1 + n_B, so T1
/// shortens as the bath warms.
pub fn t1_thermal(t1_zero_ms: f64, f_ghz: f64, t_kelvin: f64) -> f64 {
    t1_zero_ms / (1.0 + bose_occupation(f_ghz, t_kelvin))
}

/// κ = f / Q, returned in MHz.
pub fn cavity_linewidth(f_ghz: f64, q: f64) -> f64 {
    1000.0 * f_ghz / q
}

/// g_qq = g_sp² / |Δ|, MHz.
pub fn dispersive_coupling(g_sp_mhz: f64, detuning_mhz: f64) -> Result<f64, DeviceError> {
    if detuning_mhz == 0.0 {
        return Err(DeviceError::ZeroDetuning);
    }
    Ok(g_sp_mhz * g_sp_mhz / detuning_mhz.abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandMembership {
    pub inside: bool,
    /// Larmor frequency, GHz.
    pub f_larmor: f64,
    /// Signed distance to the nearest band edge, GHz; positive inside.
    pub margin: f64,
}

pub fn in_control_band(g: f64, b_tesla: f64, band: &ControlBand) -> BandMembership {
    let f = energy_to_frequency(zeeman_splitting(g, b_tesla));
    let margin = (f - band.f_min).min(band.f_max - f);
    BandMembership { inside: f >= band.f_min && f <= band.f_max, f_larmor: f, margin }
}
