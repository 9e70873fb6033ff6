//! Dispersive phonon bus: effective XY exchange between two spin qubits
//! coupled to a common detuned mode, a full qubit⊗qubit⊗mode oracle, and
//! gate timing estimates.
//!
//! Frequencies are in MHz and times in µs. Phases accumulate as 2π·f·t.
//! The rotating frame places both qubits at zero and the mode at the
//! detuning.

mod effective;
mod expm;
mod oracle;

pub use effective::{effective_j, evolve_effective, gate_metrics, GateMetrics};
pub use expm::{expm, propagator};
pub use oracle::{evolve_full_oracle, evolve_full_series, evolve_full_truncated, one_excitation_splitting, FullEvolution};

use num_complex::Complex64;

/// Dispersive coupling ratio above which the second-order reduction is
/// flagged as unreliable.
pub const DISPERSIVE_LIMIT: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum BusError {
    #[error("the qubit-mode detuning must be non-zero")]
    ZeroDetuning,
    #[error("the effective exchange vanishes; at least one coupling is zero")]
    ZeroCoupling,
    #[error("fock cutoff {cutoff} not converged: doubling it changes the result by {delta:e}")]
    CutoffNotConverged { cutoff: usize, delta: f64 },
    #[error("two-qubit state is not normalized (norm {0})")]
    InvalidState(f64),
    #[error("invalid bus parameter: {0}")]
    InvalidParameter(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BusConfig {
    /// Qubit 1 to mode coupling, MHz.
    pub g1_mhz: f64,
    /// Qubit 2 to mode coupling, MHz.
    pub g2_mhz: f64,
    /// Qubit to mode detuning, MHz.
    pub detuning_mhz: f64,
    /// Mode linewidth, MHz.
    pub kappa_mhz: f64,
    /// Number of mode Fock states kept (n = 0..cutoff-1).
    pub fock_cutoff: usize,
}

impl Default for BusConfig {
    fn default() -> Self {
        Self { g1_mhz: 5.0, g2_mhz: 5.0, detuning_mhz: 50.0, kappa_mhz: 0.6, fock_cutoff: 4 }
    }
}

impl BusConfig {
    pub fn symmetric(g_mhz: f64, detuning_mhz: f64, kappa_mhz: f64) -> Self {
        Self { g1_mhz: g_mhz, g2_mhz: g_mhz, detuning_mhz, kappa_mhz, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), BusError> {
        if self.detuning_mhz == 0.0 {
            return Err(BusError::ZeroDetuning);
        }
        if self.fock_cutoff < 2 {
            return Err(BusError::InvalidParameter("fock_cutoff must be at least 2"));
        }
        if !(self.kappa_mhz >= 0.0) || !self.g1_mhz.is_finite() || !self.g2_mhz.is_finite() || !self.detuning_mhz.is_finite() {
            return Err(BusError::InvalidParameter("couplings, detuning and kappa must be finite with kappa >= 0"));
        }
        Ok(())
    }

    /// Largest |g_i/Δ|.
    pub fn dispersive_ratio(&self) -> f64 {
        libm::fabs(self.g1_mhz).max(libm::fabs(self.g2_mhz)) / libm::fabs(self.detuning_mhz)
    }

    /// True when the second-order reduction is trustworthy.
    pub fn is_dispersive(&self) -> bool {
        self.dispersive_ratio() <= DISPERSIVE_LIMIT
    }
}

/// Pure two-qubit state over |00⟩, |01⟩, |10⟩, |11⟩ (first digit is qubit 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    pub amplitudes: [Complex64; 4],
}

pub const NORM_TOLERANCE: f64 = 1e-10;

impl TwoQubitState {
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self, BusError> {
        let s = Self { amplitudes };
        let n = s.norm();
        if libm::fabs(n - 1.0) > NORM_TOLERANCE {
            return Err(BusError::InvalidState(n));
        }
        Ok(s)
    }

    /// Computational basis state, index 0..4 in |q1 q2⟩ binary order.
    pub fn basis(index: usize) -> Self {
        let mut amplitudes = [Complex64::new(0.0, 0.0); 4];
        amplitudes[index & 3] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amplitudes.iter().map(|a| a.norm_sqr()).sum())
    }

    pub fn populations(&self) -> [f64; 4] {
        self.amplitudes.map(|a| a.norm_sqr())
    }

    /// Expected number of excited qubits.
    pub fn excitation_number(&self) -> f64 {
        let p = self.populations();
        p[1] + p[2] + 2.0 * p[3]
    }

    /// |⟨self|other⟩|².
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.amplitudes.iter().zip(other.amplitudes.iter()).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm_sqr()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amplitudes.iter().zip(other.amplitudes.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unnormalized_state() {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        assert!(TwoQubitState::new([one, one, z, z]).is_err());
        let h = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        assert!(TwoQubitState::new([z, h, h, z]).is_ok());
    }

    #[test]
    fn config_validation() {
        assert_eq!(BusConfig { detuning_mhz: 0.0, ..BusConfig::default() }.validate(), Err(BusError::ZeroDetuning));
        assert!(BusConfig { fock_cutoff: 1, ..BusConfig::default() }.validate().is_err());
        assert!(BusConfig::default().validate().is_ok());
        assert!(BusConfig::default().is_dispersive());
        assert!(!BusConfig::symmetric(20.0, 50.0, 0.0).is_dispersive());
    }
}
