use core::f64::consts::PI;

use super::{bottleneck_form_factor, CavityError};
use crate::lattice::MaterialSpec;
use crate::units::{HBAR_UEV_NS, PLANCK_UEV_NS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bottleneck {
    pub dot_length_nm: f64,
    pub material: MaterialSpec,
}

/// Phonon density of states seen by the qubit, per µeV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityOfStates {
    /// D = d0 · f² (· form factor), with f in GHz.
    Bulk { d0: f64, bottleneck: Option<Bottleneck> },
    /// Lorentzian local density of states of a cavity mode of quality `q`.
    Cavity { f_mode_ghz: f64, q: f64 },
}

impl DensityOfStates {
    /// Bulk density of states scaled so that T1(`f_cal_ghz`) = `t1_cal_ms`
    /// for matrix element `m_sp_uev`.
    pub fn bulk_calibrated(m_sp_uev: f64, f_cal_ghz: f64, t1_cal_ms: f64, bottleneck: Option<Bottleneck>) -> Result<Self, CavityError> {
        if m_sp_uev == 0.0 {
            return Err(CavityError::ZeroCoupling);
        }
        let unit = DensityOfStates::Bulk { d0: 1.0, bottleneck };
        let d_target = HBAR_UEV_NS / (2.0 * PI * m_sp_uev * m_sp_uev * t1_cal_ms * 1e6);
        Ok(DensityOfStates::Bulk { d0: d_target / unit.at(f_cal_ghz), bottleneck })
    }

    pub fn at(&self, f_ghz: f64) -> f64 {
        match *self {
            DensityOfStates::Bulk { d0, bottleneck } => {
                let form = bottleneck.map_or(1.0, |b| bottleneck_form_factor(f_ghz, b.dot_length_nm, &b.material));
                d0 * f_ghz * f_ghz * form
            }
            DensityOfStates::Cavity { f_mode_ghz, q } => {
                let half_width = 0.5 * f_mode_ghz / q * PLANCK_UEV_NS;
                let detuning = (f_ghz - f_mode_ghz) * PLANCK_UEV_NS;
                half_width / (PI * (detuning * detuning + half_width * half_width))
            }
        }
    }
}

/// Golden-rule relaxation time 1/T1 = (2π/ħ)|M_sp|² D, in ms, for a qubit
/// at `f_qubit_ghz`.
pub fn t1_golden_rule(m_sp_uev: f64, f_qubit_ghz: f64, dos: &DensityOfStates) -> Result<f64, CavityError> {
    let d = dos.at(f_qubit_ghz);
    if m_sp_uev == 0.0 || d == 0.0 {
        return Err(CavityError::ZeroCoupling);
    }
    let t1_ns = HBAR_UEV_NS / (2.0 * PI * m_sp_uev * m_sp_uev * d);
    Ok(t1_ns * 1e-6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::device::{t1_powerlaw, DeviceModelParams};
    use approx::assert_relative_eq;

    const M: f64 = 0.026;

    #[test]
    fn bulk_reproduces_power_law() {
        let p = DeviceModelParams::default();
        let dos = DensityOfStates::bulk_calibrated(M, 6.0, 1.0, None).unwrap();
        for f in [2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0] {
            assert_relative_eq!(t1_golden_rule(M, f, &dos).unwrap(), t1_powerlaw(f, &p), max_relative = 1e-12);
        }
        assert_relative_eq!(t1_golden_rule(M, 3.0, &dos).unwrap(), 4.0, max_relative = 1e-12);
    }

    #[test]
    fn bottleneck_corrected_bulk() {
        let b = Bottleneck { dot_length_nm: 180.0, material: MaterialSpec::GERMANIUM };
        let dos = DensityOfStates::bulk_calibrated(M, 6.0, 1.0, Some(b)).unwrap();
        let form = |f| bottleneck_form_factor(f, 180.0, &MaterialSpec::GERMANIUM);
        assert_relative_eq!(t1_golden_rule(M, 6.0, &dos).unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(t1_golden_rule(M, 3.0, &dos).unwrap(), 4.0 * form(6.0) / form(3.0), max_relative = 1e-12);
    }

    #[test]
    fn cavity_lorentzian_contrast() {
        let (f, q) = (6.0, 18_000.0);
        let dos = DensityOfStates::Cavity { f_mode_ghz: f, q };
        let on = t1_golden_rule(M, f, &dos).unwrap();
        let off = t1_golden_rule(M, f + 50.0 * f / q, &dos).unwrap();
        assert!(off / on >= 2500.0);
        assert_relative_eq!(off / on, 1.0 + 100.0 * 100.0, max_relative = 1e-9);
        for rel in [0.001, 0.01, 0.1] {
            let df = rel * f;
            let ratio = t1_golden_rule(M, f + df, &dos).unwrap() / on;
            let want = 1.0 + (2.0 * q * df / f) * (2.0 * q * df / f);
            assert!((ratio / want - 1.0).abs() < 0.01);
        }
    }

    #[test]
    fn zero_coupling_is_distinguished() {
        let dos = DensityOfStates::Cavity { f_mode_ghz: 6.0, q: 1e4 };
        assert_eq!(t1_golden_rule(0.0, 6.0, &dos), Err(CavityError::ZeroCoupling));
        assert_eq!(DensityOfStates::bulk_calibrated(0.0, 6.0, 1.0, None), Err(CavityError::ZeroCoupling));
    }
}
