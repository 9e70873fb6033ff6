use super::{BusConfig, BusError, TwoQubitState};
use num_complex::Complex64;

/// Exchange rate J = g1·g2/Δ, MHz.
pub fn effective_j(cfg: &BusConfig) -> Result<f64, BusError> {
    if cfg.detuning_mhz == 0.0 {
        return Err(BusError::ZeroDetuning);
    }
    Ok(cfg.g1_mhz * cfg.g2_mhz / cfg.detuning_mhz)
}

/// Evolves under H/h = J(σ₊σ₋ + σ₋σ₊) for time t in µs.
///
/// The single-excitation pair rotates by θ = 2πJt:
/// |01⟩ → cos θ|01⟩ − i sin θ|10⟩. |00⟩ and |11⟩ are untouched.
pub fn evolve_effective(state: &TwoQubitState, j_mhz: f64, t_us: f64) -> TwoQubitState {
    let theta = 2.0 * core::f64::consts::PI * j_mhz * t_us;
    let c = Complex64::new(libm::cos(theta), 0.0);
    let s = Complex64::new(0.0, -libm::sin(theta));
    let [a00, a01, a10, a11] = state.amplitudes;
    TwoQubitState { amplitudes: [a00, c * a01 + s * a10, s * a01 + c * a10, a11] }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateMetrics {
    /// Exchange rate, MHz.
    pub j_mhz: f64,
    /// Exchange oscillation period 1/(2|J|), µs.
    pub t_swap_us: f64,
    /// Time for complete |01⟩ → |10⟩ transfer, an iSWAP, 1/(4|J|), µs.
    pub t_entangle_us: f64,
    /// Mode decay inherited by the qubits, (g/Δ)²·κ with g² the mean of g1² and g2², MHz.
    pub kappa_eff_mhz: f64,
    /// exp(−κ_eff·t_entangle).
    pub fidelity_estimate: f64,
}

pub fn gate_metrics(cfg: &BusConfig) -> Result<GateMetrics, BusError> {
    let j = effective_j(cfg)?;
    if j == 0.0 {
        return Err(BusError::ZeroCoupling);
    }
    let j_abs = libm::fabs(j);
    let t_swap_us = 1.0 / (2.0 * j_abs);
    let t_entangle_us = 1.0 / (4.0 * j_abs);
    let g_sq = 0.5 * (cfg.g1_mhz * cfg.g1_mhz + cfg.g2_mhz * cfg.g2_mhz);
    let kappa_eff_mhz = g_sq / (cfg.detuning_mhz * cfg.detuning_mhz) * cfg.kappa_mhz;
    let fidelity_estimate = libm::exp(-kappa_eff_mhz * t_entangle_us);
    Ok(GateMetrics { j_mhz: j, t_swap_us, t_entangle_us, kappa_eff_mhz, fidelity_estimate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn effective_j_examples() {
        assert_relative_eq!(effective_j(&BusConfig::symmetric(5.0, 50.0, 0.0)).unwrap(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(effective_j(&BusConfig::symmetric(6.0, 100.0, 0.0)).unwrap(), 0.36, max_relative = 1e-15);
        assert_eq!(effective_j(&BusConfig { g1_mhz: 0.0, ..BusConfig::default() }).unwrap(), 0.0);
        assert_eq!(effective_j(&BusConfig::symmetric(5.0, 0.0, 0.0)), Err(BusError::ZeroDetuning));
    }

    #[test]
    fn full_transfer_at_half_microsecond() {
        let out = evolve_effective(&TwoQubitState::basis(1), 0.5, 0.5);
        assert!(out.populations()[2] > 1.0 - 1e-15);
    }

    #[test]
    fn ground_state_invariant() {
        let out = evolve_effective(&TwoQubitState::basis(0), 0.73, 12.4);
        assert_eq!(out, TwoQubitState::basis(0));
        let out = evolve_effective(&TwoQubitState::basis(3), 0.73, 12.4);
        assert_eq!(out, TwoQubitState::basis(3));
    }

    #[test]
    fn equal_superposition_at_eighth_period() {
        let j = 0.5;
        let out = evolve_effective(&TwoQubitState::basis(1), j, 1.0 / (8.0 * j));
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert!((out.amplitudes[1] - Complex64::new(h, 0.0)).norm() < 1e-14);
        assert!((out.amplitudes[2] - Complex64::new(0.0, -h)).norm() < 1e-14);
    }

    #[test]
    fn gate_metric_examples() {
        let m = gate_metrics(&BusConfig::symmetric(5.0, 50.0, 0.6)).unwrap();
        assert_relative_eq!(m.t_entangle_us, 0.5, max_relative = 1e-14);
        assert_relative_eq!(m.kappa_eff_mhz, 0.006, max_relative = 1e-12);
        assert_relative_eq!(m.fidelity_estimate, 0.997, epsilon = 5e-4);
        assert_eq!(gate_metrics(&BusConfig::symmetric(5.0, 50.0, 0.0)).unwrap().fidelity_estimate, 1.0);
        let m = gate_metrics(&BusConfig::symmetric(6.0, 100.0, 0.0)).unwrap();
        assert_relative_eq!(m.t_swap_us, 1.39, epsilon = 5e-3);
        assert_eq!(gate_metrics(&BusConfig::symmetric(0.0, 50.0, 0.0)), Err(BusError::ZeroCoupling));
    }

    fn arb_state() -> impl Strategy<Value = TwoQubitState> {
        proptest::array::uniform8(-1.0f64..1.0).prop_filter_map("nonzero", |v| {
            let amps = [Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]), Complex64::new(v[4], v[5]), Complex64::new(v[6], v[7])];
            let n = libm::sqrt(amps.iter().map(|a| a.norm_sqr()).sum());
            (n > 1e-3).then(|| TwoQubitState { amplitudes: amps.map(|a| a / n) })
        })
    }

    proptest! {
        #[test]
        fn preserves_norm_and_excitations(s in arb_state(), j in -2.0f64..2.0, t in -10.0f64..10.0) {
            let out = evolve_effective(&s, j, t);
            prop_assert!((out.norm() - 1.0).abs() < 1e-12);
            prop_assert!((out.excitation_number() - s.excitation_number()).abs() < 1e-12);
        }

        #[test]
        fn forward_then_backward_is_identity(s in arb_state(), j in -2.0f64..2.0, t in -10.0f64..10.0) {
            let back = evolve_effective(&evolve_effective(&s, j, t), j, -t);
            prop_assert!(back.max_abs_diff(&s) < 1e-10);
        }

        #[test]
        fn fidelity_monotone_in_kappa(g in 0.5f64..10.0, d in 20.0f64..200.0, k1 in 0.0f64..5.0, dk in 1e-3f64..5.0) {
            let a = gate_metrics(&BusConfig::symmetric(g, d, k1)).unwrap();
            let b = gate_metrics(&BusConfig::symmetric(g, d, k1 + dk)).unwrap();
            prop_assert!(b.fidelity_estimate < a.fidelity_estimate || a.fidelity_estimate == 0.0);
        }

        #[test]
        fn fidelity_monotone_in_gate_time(g in 0.5f64..10.0, d in 20.0f64..200.0, k in 0.01f64..5.0, dd in 1.0f64..100.0) {
            // Larger detuning at fixed κ_eff·Δ² lengthens t_entangle; compare at equal κ_eff.
            let a = gate_metrics(&BusConfig::symmetric(g, d, k)).unwrap();
            let d2 = d + dd;
            let k2 = k * (d2 * d2) / (d * d);
            let b = gate_metrics(&BusConfig::symmetric(g, d2, k2)).unwrap();
            prop_assert!((b.kappa_eff_mhz - a.kappa_eff_mhz).abs() <= 1e-12 * a.kappa_eff_mhz);
            prop_assert!(b.t_entangle_us > a.t_entangle_us);
            prop_assert!(b.fidelity_estimate < a.fidelity_estimate);
        }
    }
}
