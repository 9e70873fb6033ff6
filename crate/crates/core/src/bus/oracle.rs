//! Brute-force qubit⊗qubit⊗mode evolution on a truncated Fock space.

use super::expm::propagator;
use super::{BusConfig, BusError, TwoQubitState};
use crate::linalg::hermitian_eigenpairs;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Largest change allowed when the Fock cutoff is doubled.
pub const CUTOFF_TOLERANCE: f64 = 1e-6;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn index(q: usize, n: usize, cutoff: usize) -> usize {
    q * cutoff + n
}

fn qubit_excitations(q: usize) -> usize {
    (q & 1) + (q >> 1)
}

/// H/h = Δ a†a + Σᵢ gᵢ(σ₊⁽ⁱ⁾a + σ₋⁽ⁱ⁾a†) in MHz, dimension 4·cutoff.
fn hamiltonian(cfg: &BusConfig, cutoff: usize) -> DMatrix<Complex64> {
    let dim = 4 * cutoff;
    let mut h = DMatrix::from_element(dim, dim, ZERO);
    for q in 0..4 {
        for n in 0..cutoff {
            h[(index(q, n, cutoff), index(q, n, cutoff))] = Complex64::new(cfg.detuning_mhz * n as f64, 0.0);
        }
    }
    // σ₊⁽¹⁾ flips the high bit of q, σ₊⁽²⁾ the low bit.
    for (raise_bit, g) in [(2usize, cfg.g1_mhz), (1usize, cfg.g2_mhz)] {
        for q in (0..4).filter(|q| q & raise_bit == 0) {
            for n in 1..cutoff {
                let from = index(q, n, cutoff);
                let to = index(q | raise_bit, n - 1, cutoff);
                let amp = Complex64::new(g * libm::sqrt(n as f64), 0.0);
                h[(to, from)] += amp;
                h[(from, to)] += amp;
            }
        }
    }
    h
}

fn excitation_operator_diag(cutoff: usize) -> Vec<f64> {
    let mut d = Vec::with_capacity(4 * cutoff);
    for q in 0..4 {
        for n in 0..cutoff {
            d.push((qubit_excitations(q) + n) as f64);
        }
    }
    d
}

fn embed(initial: &TwoQubitState, cutoff: usize) -> DVector<Complex64> {
    let mut psi = DVector::from_element(4 * cutoff, ZERO);
    for q in 0..4 {
        psi[index(q, 0, cutoff)] = initial.amplitudes[q];
    }
    psi
}

/// Qubit-side summary of a full state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullEvolution {
    /// Qubit amplitudes with the mode in vacuum, unnormalized.
    pub vacuum_amplitudes: [Complex64; 4],
    /// Vacuum projection renormalized to a pure qubit state; equals the
    /// input when the vacuum weight vanishes.
    pub reduced: TwoQubitState,
    /// Diagonal of the mode-traced qubit density matrix.
    pub qubit_populations: [f64; 4],
    /// Probability of at least one phonon in the mode.
    pub leakage: f64,
    /// ⟨a†a⟩.
    pub mean_phonons: f64,
}

fn summarize(psi: &DVector<Complex64>, cutoff: usize, fallback: &TwoQubitState) -> FullEvolution {
    let mut vacuum_amplitudes = [ZERO; 4];
    let mut qubit_populations = [0.0; 4];
    let mut mean_phonons = 0.0;
    for q in 0..4 {
        vacuum_amplitudes[q] = psi[index(q, 0, cutoff)];
        for n in 0..cutoff {
            let p = psi[index(q, n, cutoff)].norm_sqr();
            qubit_populations[q] += p;
            mean_phonons += n as f64 * p;
        }
    }
    let vac_weight: f64 = vacuum_amplitudes.iter().map(|a| a.norm_sqr()).sum();
    let total: f64 = qubit_populations.iter().sum();
    let reduced = if vac_weight > 0.0 {
        let s = 1.0 / libm::sqrt(vac_weight);
        TwoQubitState { amplitudes: vacuum_amplitudes.map(|a| a * s) }
    } else {
        *fallback
    };
    FullEvolution { vacuum_amplitudes, reduced, qubit_populations, leakage: (total - vac_weight).max(0.0), mean_phonons }
}

fn distance(a: &FullEvolution, b: &FullEvolution) -> f64 {
    let amp = a.vacuum_amplitudes.iter().zip(b.vacuum_amplitudes.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    amp.max(libm::fabs(a.leakage - b.leakage))
}

/// Full evolution at a fixed Fock cutoff, with the mode starting in vacuum.
pub fn evolve_full_truncated(cfg: &BusConfig, initial: &TwoQubitState, t_us: f64, cutoff: usize) -> Result<FullEvolution, BusError> {
    BusConfig { fock_cutoff: cutoff, ..*cfg }.validate()?;
    let u = propagator(&hamiltonian(cfg, cutoff), t_us);
    Ok(summarize(&(u * embed(initial, cutoff)), cutoff, initial))
}

/// Full evolution at `cfg.fock_cutoff`, checked against twice that cutoff.
pub fn evolve_full_oracle(cfg: &BusConfig, initial: &TwoQubitState, t_us: f64) -> Result<FullEvolution, BusError> {
    let coarse = evolve_full_truncated(cfg, initial, t_us, cfg.fock_cutoff)?;
    let fine = evolve_full_truncated(cfg, initial, t_us, 2 * cfg.fock_cutoff)?;
    let delta = distance(&coarse, &fine);
    if delta > CUTOFF_TOLERANCE {
        return Err(BusError::CutoffNotConverged { cutoff: cfg.fock_cutoff, delta });
    }
    Ok(coarse)
}

/// Full evolution sampled at t = k·dt for k = 0..=steps, reusing one
/// propagator.
pub fn evolve_full_series(cfg: &BusConfig, initial: &TwoQubitState, dt_us: f64, steps: usize) -> Result<Vec<FullEvolution>, BusError> {
    cfg.validate()?;
    let cutoff = cfg.fock_cutoff;
    let u = propagator(&hamiltonian(cfg, cutoff), dt_us);
    let mut psi = embed(initial, cutoff);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(summarize(&psi, cutoff, initial));
    for _ in 0..steps {
        psi = &u * psi;
        out.push(summarize(&psi, cutoff, initial));
    }
    Ok(out)
}

/// Splitting of the two qubit-like eigenstates in the one-excitation
/// sector of the full Hamiltonian, MHz.
///
/// Sectors of different excitation number are pushed apart by adding
/// μ·N_exc before diagonalizing. For equal couplings the splitting is 2|J|
/// to leading order in g/Δ.
pub fn one_excitation_splitting(cfg: &BusConfig) -> Result<f64, BusError> {
    cfg.validate()?;
    let cutoff = cfg.fock_cutoff;
    let mut h = hamiltonian(cfg, cutoff);
    let n_exc = excitation_operator_diag(cutoff);
    let mu = 10.0 * (libm::fabs(cfg.detuning_mhz) * cutoff as f64 + libm::fabs(cfg.g1_mhz) + libm::fabs(cfg.g2_mhz) + 1.0);
    for (i, n) in n_exc.iter().enumerate() {
        h[(i, i)] += Complex64::new(mu * n, 0.0);
    }
    let (values, vectors) = hermitian_eigenpairs(h).ok_or(BusError::InvalidParameter("eigensolver did not converge"))?;

    // (energy, mode weight) of each one-excitation eigenstate
    let mut sector: Vec<(f64, f64)> = Vec::new();
    for (k, e) in values.iter().enumerate() {
        let v = vectors.column(k);
        let n_mean: f64 = v.iter().zip(n_exc.iter()).map(|(a, n)| a.norm_sqr() * n).sum();
        if libm::fabs(n_mean - 1.0) < 1e-6 {
            let mode_weight: f64 = (1..cutoff).map(|n| v[index(0, n, cutoff)].norm_sqr()).sum();
            sector.push((e - mu, mode_weight));
        }
    }
    if sector.len() != 3 {
        return Err(BusError::InvalidParameter("one-excitation sector not isolated"));
    }
    sector.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(libm::fabs(sector[0].0 - sector[1].0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bus::{effective_j, evolve_effective};

    #[test]
    fn hamiltonian_is_hermitian_and_conserves_excitations() {
        let cfg = BusConfig { g1_mhz: 3.0, g2_mhz: 7.0, detuning_mhz: 40.0, kappa_mhz: 0.0, fock_cutoff: 5 };
        let h = hamiltonian(&cfg, 5);
        assert!((&h - h.adjoint()).norm() < 1e-15);
        let n = excitation_operator_diag(5);
        for i in 0..20 {
            for j in 0..20 {
                if h[(i, j)].norm() > 0.0 {
                    assert_eq!(n[i], n[j]);
                }
            }
        }
    }

    #[test]
    fn splitting_matches_exchange_at_ten_percent_ratio() {
        let cfg = BusConfig::symmetric(5.0, 50.0, 0.0);
        let s = one_excitation_splitting(&cfg).unwrap();
        let two_j = 2.0 * effective_j(&cfg).unwrap();
        assert!(libm::fabs(s - two_j) / two_j < 0.05, "{s} vs {two_j}");
    }

    #[test]
    fn splitting_error_scales_quadratically() {
        let err = |g: f64| {
            let cfg = BusConfig::symmetric(g, 50.0, 0.0);
            let two_j = 2.0 * effective_j(&cfg).unwrap();
            libm::fabs(one_excitation_splitting(&cfg).unwrap() - two_j) / two_j
        };
        let (e1, e05) = (err(5.0), err(2.5));
        assert!(e1 < 0.05 && e05 < 0.05);
        let ratio = e1 / e05;
        assert!((2.0..=8.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn zero_coupling_leaves_qubits_alone() {
        let cfg = BusConfig::symmetric(0.0, 50.0, 0.0);
        let init = TwoQubitState::basis(1);
        let out = evolve_full_oracle(&cfg, &init, 3.7).unwrap();
        assert_eq!(out.leakage, 0.0);
        assert!(out.reduced.max_abs_diff(&init) < 1e-12);
    }

    #[test]
    fn swap_period_and_leakage_follow_dispersive_picture() {
        let cfg = BusConfig::symmetric(5.0, 50.0, 0.0);
        let j = effective_j(&cfg).unwrap();
        let t_transfer = 1.0 / (4.0 * j);
        let steps = 2000;
        let series = evolve_full_series(&cfg, &TwoQubitState::basis(1), 2.0 * t_transfer / steps as f64, steps).unwrap();
        let (k_best, _) = series.iter().enumerate().map(|(k, s)| (k, s.qubit_populations[2])).max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
        let t_best = 2.0 * t_transfer * k_best as f64 / steps as f64;
        assert!(libm::fabs(t_best - t_transfer) / t_transfer < 0.05, "{t_best} vs {t_transfer}");
        let ratio = 0.1f64;
        let max_leak = series.iter().map(|s| s.leakage).fold(0.0, f64::max);
        assert!(max_leak <= 4.0 * ratio * ratio, "{max_leak}");
    }

    #[test]
    fn populations_agree_with_effective_model() {
        let cfg = BusConfig::symmetric(2.5, 50.0, 0.0);
        let j = effective_j(&cfg).unwrap();
        for t in [0.3, 1.1, 2.0] {
            let full = evolve_full_oracle(&cfg, &TwoQubitState::basis(1), t).unwrap();
            let eff = evolve_effective(&TwoQubitState::basis(1), j, t);
            let d = libm::fabs(full.qubit_populations[2] - eff.populations()[2]);
            assert!(d < 0.05, "t={t}: {d}");
        }
    }

    #[test]
    fn cutoff_two_fails_convergence_from_doubly_excited_state() {
        let cfg = BusConfig { fock_cutoff: 2, ..BusConfig::symmetric(10.0, 20.0, 0.0) };
        let r = evolve_full_oracle(&cfg, &TwoQubitState::basis(3), 1.0);
        assert!(matches!(r, Err(BusError::CutoffNotConverged { .. })));
    }
}
