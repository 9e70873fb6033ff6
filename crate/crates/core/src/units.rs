//! Physical constants and the handful of unit conversions the models share.
//!
//! Canonical units across the crate: energies in µeV, frequencies in GHz,
//! couplings and linewidths in MHz, times in ms or µs (named at each use),
//! magnetic fields in T, electric fields in MV/m, lengths in nm or µm,
//! temperatures in K. All values are CODATA-2018.

/// Elementary charge, C (exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Planck constant, J·s (exact).
pub const PLANCK_J_S: f64 = 6.626_070_15e-34;

/// Reduced Planck constant, J·s.
pub const HBAR_J_S: f64 = PLANCK_J_S / (2.0 * core::f64::consts::PI);

/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN_J_PER_K: f64 = 1.380_649e-23;

/// Bohr magneton, J/T.
pub const BOHR_MAGNETON_J_PER_T: f64 = 9.274_010_078_3e-24;

/// Bohr magneton, µeV/T.
pub const BOHR_MAGNETON_UEV_PER_T: f64 = BOHR_MAGNETON_J_PER_T / ELEMENTARY_CHARGE * 1e6;

/// Planck constant, µeV·ns. Numerically the energy of a 1 GHz quantum in µeV.
pub const PLANCK_UEV_NS: f64 = PLANCK_J_S / ELEMENTARY_CHARGE * 1e15;

/// Reduced Planck constant, µeV·ns.
pub const HBAR_UEV_NS: f64 = PLANCK_UEV_NS / (2.0 * core::f64::consts::PI);

/// Boltzmann constant, µeV/K.
pub const BOLTZMANN_UEV_PER_K: f64 = BOLTZMANN_J_PER_K / ELEMENTARY_CHARGE * 1e6;

/// Grouped view of the constants, for callers that prefer passing one value around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysConstants {
    pub mu_b_uev_per_t: f64,
    pub h_uev_ns: f64,
    pub h_j_s: f64,
    pub hbar_uev_ns: f64,
    pub hbar_j_s: f64,
    pub k_b_uev_per_k: f64,
}

pub const CONSTANTS: PhysConstants = PhysConstants {
    mu_b_uev_per_t: BOHR_MAGNETON_UEV_PER_T,
    h_uev_ns: PLANCK_UEV_NS,
    h_j_s: PLANCK_J_S,
    hbar_uev_ns: HBAR_UEV_NS,
    hbar_j_s: HBAR_J_S,
    k_b_uev_per_k: BOLTZMANN_UEV_PER_K,
};

/// E = h f, µeV → GHz.
#[inline]
pub fn energy_to_frequency(energy_uev: f64) -> f64 {
    energy_uev / PLANCK_UEV_NS
}

/// f = E / h, GHz → µeV.
#[inline]
pub fn frequency_to_energy(freq_ghz: f64) -> f64 {
    freq_ghz * PLANCK_UEV_NS
}

/// Energy of a quantum at `freq_mhz`, in µeV.
#[inline]
pub fn mhz_to_energy(freq_mhz: f64) -> f64 {
    frequency_to_energy(freq_mhz * 1e-3)
}

/// Inverse of [`mhz_to_energy`].
#[inline]
pub fn energy_to_mhz(energy_uev: f64) -> f64 {
    energy_to_frequency(energy_uev) * 1e3
}
