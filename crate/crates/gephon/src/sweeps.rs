//! Parameter sweeps over the core models.

use rayon::prelude::*;

use gephon_core::bus::{effective_j, gate_metrics, one_excitation_splitting, BusConfig};
use gephon_core::cavity::{
    calibrate_deformation_potential, evaluate_coupling, overlap_normalized, sigma_sweep, synth_cavity_mode, zero_point_strain, CavityMode, GridSpec,
};
use gephon_core::device::{
    bose_occupation, cavity_linewidth, g_eff, g_sp_linear, in_control_band, q_parabolic, t1_powerlaw, t1_thermal, zeeman_splitting,
};
use gephon_core::lattice::{detect_gaps, k_path, BandGap, BandStructure, PweSolver, DESIGN_WINDOW_R_OVER_A};

use crate::config::{ConfigError, RunConfig};
use crate::error::RunError;
use crate::table::{Provenance, SweepResult};

/// Band-centre window of the lattice design targets, GHz.
pub const GAP_CENTER_WINDOW_GHZ: (f64, f64) = (4.0, 6.0);
/// Band-gap width window of the lattice design targets, GHz.
pub const GAP_WIDTH_WINDOW_GHZ: (f64, f64) = (2.0, 3.0);
/// Entangling-gate duration window, µs.
pub const GATE_WINDOW_US: (f64, f64) = (0.5, 1.0);

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn table(command: &str, cfg: &RunConfig, header: &[&str]) -> Result<SweepResult, RunError> {
    Ok(SweepResult::new(header, Provenance::new(command, &cfg.hash()))?)
}

/// g-factor, coupling and Zeeman splitting versus vertical field.
pub fn sweep_efield(cfg: &RunConfig) -> Result<SweepResult, RunError> {
    let mut t = table("sweep-efield", cfg, &["e_z_mv_per_m", "g_eff", "g_sp_model_mhz", "zeeman_uev", "f_larmor_ghz", "in_band", "band_margin_ghz"])?;
    for e in cfg.sweeps.efield.values() {
        let g = g_eff(e, &cfg.device)?;
        let band = in_control_band(g, cfg.conditions.b_tesla, &cfg.conditions.band);
        t.push(&[e, g, g_sp_linear(e, &cfg.device), zeeman_splitting(g, cfg.conditions.b_tesla), band.f_larmor, flag(band.inside), band.margin])?;
    }
    Ok(t)
}

/// T1, Q, linewidth and thermal derating versus phonon frequency. Rows
/// where the Q model is non-positive are kept with `q_valid = 0` and NaN in
/// the Q-derived columns.
pub fn sweep_frequency(cfg: &RunConfig) -> Result<SweepResult, RunError> {
    let mut t = table("sweep-frequency", cfg, &["f_ghz", "t1_ms", "q", "q_valid", "kappa_mhz", "n_bose", "t1_thermal_ms"])?;
    let temp = cfg.conditions.temperature_k;
    for f in cfg.sweeps.frequency.values() {
        if !(f > 0.0) {
            return Err(ConfigError::Invalid(format!("sweep.frequency must be positive, found {f}")).into());
        }
        let t1 = t1_powerlaw(f, &cfg.device);
        let (q, valid, kappa) = match q_parabolic(f, &cfg.device) {
            Ok(q) => (q, true, cavity_linewidth(f, q)),
            Err(_) => (f64::NAN, false, f64::NAN),
        };
        t.push(&[f, t1, q, flag(valid), kappa, bose_occupation(f, temp), t1_thermal(t1, f, temp)])?;
    }
    Ok(t)
}

#[derive(Debug, Clone)]
pub struct BandsOutput {
    pub bands: SweepResult,
    pub gaps: SweepResult,
    pub structure: BandStructure,
    pub gap_list: Vec<BandGap>,
    pub warnings: Vec<String>,
}

impl BandsOutput {
    pub fn report(&self) -> String {
        let mut lines = Vec::new();
        lines.push(format!("plane waves: {}, k-points: {}", self.structure.n_plane_waves, self.structure.path.points.len()));
        if self.gap_list.is_empty() {
            lines.push("no gap".to_owned());
        }
        for g in &self.gap_list {
            lines.push(format!(
                "gap above band {}: {:.4}-{:.4} GHz, center {:.4} GHz, width {:.4} GHz, complete={}, center window {}, width window {}",
                g.lower_band,
                g.f_low,
                g.f_high,
                g.center,
                g.width,
                g.complete,
                pass_fail(in_window(g.center, GAP_CENTER_WINDOW_GHZ)),
                pass_fail(in_window(g.width, GAP_WIDTH_WINDOW_GHZ)),
            ));
        }
        lines.join("\n")
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn in_window(x: f64, w: (f64, f64)) -> bool {
    x >= w.0 && x <= w.1
}

/// Band structure along Γ–M–K–Γ and its complete gaps. k-points are solved
/// in parallel and reassembled in path order.
pub fn run_bands(cfg: &RunConfig) -> Result<BandsOutput, RunError> {
    let spec = cfg.lattice_spec();
    let mut warnings = Vec::new();
    if !spec.in_design_window() {
        warnings.push(format!("r/a = {} lies outside the {}-{} design window", spec.r_over_a(), DESIGN_WINDOW_R_OVER_A.0, DESIGN_WINDOW_R_OVER_A.1));
    }
    let solver = PweSolver::new(&spec, &cfg.material, &cfg.pwe)?;
    let path = k_path(&spec, cfg.k_per_segment)?;
    let rows: Vec<Vec<f64>> = path.points.par_iter().enumerate().map(|(i, k)| solver.solve_indexed(i, *k)).collect::<Result<_, _>>()?;
    let structure = BandStructure { path, bands: rows, n_plane_waves: solver.n_plane_waves() };

    let n_bands = structure.n_bands();
    let mut header = vec!["k_index".to_owned(), "k_x".to_owned(), "k_y".to_owned(), "path_distance".to_owned()];
    header.extend((0..n_bands).map(|n| format!("f_band{n}")));
    let mut bands = SweepResult::new(&header, Provenance::new("bands", &cfg.hash()))?;
    for (i, row) in structure.bands.iter().enumerate() {
        let k = structure.path.points[i];
        let mut r = vec![i as f64, k[0], k[1], structure.path.distance[i]];
        r.extend_from_slice(row);
        bands.push(&r)?;
    }

    let gap_list = detect_gaps(&structure);
    let mut gaps = table(
        "bands",
        cfg,
        &["lower_band", "f_low_ghz", "f_high_ghz", "center_ghz", "width_ghz", "relative_width", "complete", "center_in_window", "width_in_window"],
    )?;
    for g in &gap_list {
        gaps.push(&[
            g.lower_band as f64,
            g.f_low,
            g.f_high,
            g.center,
            g.width,
            g.relative_width(),
            flag(g.complete),
            flag(in_window(g.center, GAP_CENTER_WINDOW_GHZ)),
            flag(in_window(g.width, GAP_WIDTH_WINDOW_GHZ)),
        ])?;
    }
    Ok(BandsOutput { bands, gaps, structure, gap_list, warnings })
}

/// Analytic cavity mode at `f_ghz`, centred at the origin, on a grid fine
/// enough for its wavelength.
pub fn cavity_mode(cfg: &RunConfig, f_ghz: f64) -> Result<CavityMode, RunError> {
    let c = &cfg.cavity;
    let wavelength = cfg.material.v_s / f_ghz;
    let grid = GridSpec::resolving(wavelength, c.envelope_width_nm, c.grid.window_factor, c.grid.n);
    Ok(synth_cavity_mode(f_ghz, &cfg.material, c.envelope_width_nm, [0.0, 0.0], c.q, &grid)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub f_ghz: f64,
    pub overlap: f64,
    pub eps_zp: f64,
    pub d_eff_uev: f64,
}

/// Deformation potential that yields the reference coupling at the
/// reference frequency for the configured envelope.
pub fn calibrate(cfg: &RunConfig) -> Result<Calibration, RunError> {
    let f = cfg.cavity.reference_f_ghz;
    let mode = cavity_mode(cfg, f)?;
    let overlap = overlap_normalized(&mode, &cfg.qubit_envelope())?;
    let eps_zp = zero_point_strain(f, &cfg.material, cfg.cavity.coupling.mode_volume_um3);
    let d_eff_uev = calibrate_deformation_potential(cfg.cavity.reference_g_sp_mhz, overlap, eps_zp);
    Ok(Calibration { f_ghz: f, overlap, eps_zp, d_eff_uev })
}

#[derive(Debug, Clone)]
pub struct OverlapOutput {
    pub frequency: SweepResult,
    pub sigma: SweepResult,
    /// O(reference)/O(highest listed frequency), when both differ.
    pub contrast_ratio: Option<(f64, f64, f64)>,
    pub sigma_interior_maximum: bool,
    pub sigma_best_nm: f64,
}

/// Overlap, coupling and relaxation versus frequency, and overlap versus
/// envelope width at the reference frequency.
pub fn run_overlap(cfg: &RunConfig) -> Result<OverlapOutput, RunError> {
    let qubit = cfg.qubit_envelope();
    let freqs = &cfg.sweeps.overlap_frequencies_ghz;
    let results: Vec<_> = freqs
        .par_iter()
        .map(|&f| -> Result<_, RunError> {
            let mode = cavity_mode(cfg, f)?;
            let r = evaluate_coupling(&mode, &qubit, &cfg.material, &cfg.cavity.coupling, &cfg.device)?;
            Ok((f, mode.wavelength_nm, mode.n, r))
        })
        .collect::<Result<_, _>>()?;
    let mut frequency = table(
        "overlap",
        cfg,
        &["f_ghz", "wavelength_nm", "grid_n", "overlap", "eps_zp", "g_sp_mhz", "t1_bulk_ms", "t1_cavity_resonant_ms", "t1_ingap_ms"],
    )?;
    for (f, wl, n, r) in &results {
        frequency.push(&[*f, *wl, *n as f64, r.overlap_norm, r.eps_zp, r.g_sp_mhz, r.t1_bulk_ms, r.t1_cavity_resonant_ms, r.t1_ingap_ms])?;
    }

    let f_ref = cfg.cavity.reference_f_ghz;
    let high = freqs.last().copied().unwrap_or(f_ref);
    let o_at = |f: f64| results.iter().find(|r| (r.0 - f).abs() < 1e-12).map(|r| r.3.overlap_norm);
    let contrast_ratio = match (o_at(f_ref), o_at(high)) {
        (Some(a), Some(b)) if high != f_ref => Some((f_ref, high, a / b)),
        _ => None,
    };

    let ref_mode = cavity_mode(cfg, f_ref)?;
    let sigmas = cfg.sweeps.sigma.values();
    let sweep = sigma_sweep(&ref_mode, &qubit, &sigmas)?;
    let mut sigma = table("overlap", cfg, &["sigma_nm", "fwhm_nm", "overlap", "is_argmax"])?;
    for (i, (s, o)) in sweep.points.iter().enumerate() {
        sigma.push(&[*s, qubit.with_sigma(*s).fwhm_nm(), *o, flag(i == sweep.argmax)])?;
    }
    Ok(OverlapOutput { frequency, sigma, contrast_ratio, sigma_interior_maximum: sweep.interior_maximum(), sigma_best_nm: sweep.best().0 })
}

/// Gate rates, durations and the full-oracle check over the (g, Δ) grid
/// with equal couplings.
pub fn run_twoqubit(cfg: &RunConfig) -> Result<SweepResult, RunError> {
    let grid: Vec<(f64, f64)> =
        cfg.sweeps.g.values().into_iter().flat_map(|g| cfg.sweeps.detuning.values().into_iter().map(move |d| (g, d))).collect();
    let rows: Vec<Vec<f64>> = grid
        .par_iter()
        .map(|&(g, d)| -> Result<Vec<f64>, RunError> {
            let bus = BusConfig { g1_mhz: g, g2_mhz: g, detuning_mhz: d, ..cfg.bus };
            let j = effective_j(&bus)?;
            let m = gate_metrics(&bus)?;
            let split = one_excitation_splitting(&bus)?;
            let rel = (split - 2.0 * j.abs()).abs() / (2.0 * j.abs());
            let in_window = in_window(m.t_entangle_us, GATE_WINDOW_US) || in_window(m.t_swap_us, GATE_WINDOW_US);
            Ok(vec![
                g,
                d,
                bus.kappa_mhz,
                j,
                m.t_swap_us,
                m.t_entangle_us,
                m.kappa_eff_mhz,
                m.fidelity_estimate,
                split,
                rel,
                bus.dispersive_ratio(),
                flag(in_window),
            ])
        })
        .collect::<Result<_, _>>()?;
    let mut t = table(
        "twoqubit",
        cfg,
        &[
            "g_mhz",
            "detuning_mhz",
            "kappa_mhz",
            "j_mhz",
            "t_swap_us",
            "t_entangle_us",
            "kappa_eff_mhz",
            "fidelity",
            "oracle_splitting_mhz",
            "oracle_rel_error",
            "dispersive_ratio",
            "in_gate_window",
        ],
    )?;
    for r in &rows {
        t.push(r)?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn efield_defaults_give_six_rows() {
        let t = sweep_efield(&RunConfig::default()).unwrap();
        assert_eq!(t.rows.len(), 6);
        assert_eq!(t.column("g_eff").unwrap(), [2.0, 1.86, 1.72, 1.58, 1.44, 1.3]);
    }

    #[test]
    fn efield_single_point() {
        let cfg = RunConfig::from_text("sweep.efield.start = 0\nsweep.efield.stop = 0").unwrap();
        let t = sweep_efield(&cfg).unwrap();
        assert_eq!(t.rows, [vec![0.0, 2.0, 0.5, t.rows[0][3], t.rows[0][4], t.rows[0][5], t.rows[0][6]]]);
    }

    #[test]
    fn efield_past_model_validity_is_a_model_error() {
        let cfg = RunConfig::from_text("sweep.efield.stop = 4").unwrap();
        assert_eq!(sweep_efield(&cfg).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn frequency_sweep_flags_invalid_q() {
        let cfg = RunConfig::from_text("sweep.frequency.start = 1\nsweep.frequency.stop = 13").unwrap();
        let t = sweep_frequency(&cfg).unwrap();
        assert_eq!(t.rows.len(), 13);
        let valid = t.column("q_valid").unwrap();
        let f = t.column("f_ghz").unwrap();
        for (f, v) in f.iter().zip(&valid) {
            assert_eq!(*v == 1.0, (*f - 6.0_f64).abs() < 6.0, "f={f}");
        }
        assert!(t.column("q").unwrap()[12].is_nan());
    }

    #[test]
    fn frequency_sweep_thermal_derating() {
        let t = sweep_frequency(&RunConfig::default()).unwrap();
        for (a, b) in t.column("t1_thermal_ms").unwrap().iter().zip(t.column("t1_ms").unwrap()) {
            assert!(*a < b);
        }
        let cfg = RunConfig::from_text("conditions.temperature_k = 0.3").unwrap();
        let t = sweep_frequency(&cfg).unwrap();
        let row = &t.rows[4];
        assert_eq!(row[0], 6.0);
        assert!((row[6] - 0.617).abs() < 0.002, "{}", row[6]);
    }

    #[test]
    fn twoqubit_reference_points() {
        let cfg = RunConfig::from_text(
            "sweep.g.start = 5\nsweep.g.stop = 6\nsweep.detuning.start = 50\nsweep.detuning.stop = 100\nsweep.detuning.step = 50",
        )
        .unwrap();
        let t = run_twoqubit(&cfg).unwrap();
        assert_eq!(t.rows.len(), 4);
        let (g, d, j, te) =
            (t.column("g_mhz").unwrap(), t.column("detuning_mhz").unwrap(), t.column("j_mhz").unwrap(), t.column("t_entangle_us").unwrap());
        assert_eq!((g[0], d[0], j[0], te[0]), (5.0, 50.0, 0.5, 0.5));
        assert_eq!((g[3], d[3], j[3]), (6.0, 100.0, 0.36));
        for e in t.column("oracle_rel_error").unwrap() {
            assert!(e < 0.05);
        }
    }

    #[test]
    fn bands_zero_radius_reports_no_gap() {
        let cfg = RunConfig::from_text("lattice.r_over_a = 0\npwe.k_per_segment = 8").unwrap();
        let out = run_bands(&cfg).unwrap();
        assert!(out.gap_list.is_empty());
        assert!(out.report().contains("no gap"));
        assert_eq!(out.bands.header[..5], ["k_index", "k_x", "k_y", "path_distance", "f_band0"]);
    }

    #[test]
    fn bands_outside_design_window_warns() {
        let cfg = RunConfig::from_text("lattice.r_over_a = 0.45\npwe.k_per_segment = 8").unwrap();
        let out = run_bands(&cfg).unwrap();
        assert_eq!(out.warnings.len(), 1);
        assert!(out.warnings[0].contains("outside"));
    }

    #[test]
    fn calibration_reproduces_configured_value() {
        let cfg = RunConfig::default();
        let c = calibrate(&cfg).unwrap();
        let rel = (c.d_eff_uev / cfg.cavity.coupling.d_eff_uev - 1.0).abs();
        assert!(rel < 1e-6, "configured {} vs calibrated {}", cfg.cavity.coupling.d_eff_uev, c.d_eff_uev);
    }
}
