//! Scalar plane-wave expansion for anti-plane shear waves in a perforated
//! membrane.
//!
//! The displacement obeys ∇·(μ(r)∇u) + ρ(r)ω²u = 0 with periodic μ and ρ.
//! Holes are inclusions whose density and shear modulus are both scaled by
//! [`PweConfig::contrast`]. Expanding u over plane waves e^{i(k+G)·r} gives
//! the generalized Hermitian problem
//!
//! ```text
//! Σ_G' μ(G-G') (k+G)·(k+G') u(G') = ω² Σ_G' ρ(G-G') u(G')
//! ```
//!
//! solved per wavevector after a Cholesky reduction of the density matrix.

use alloc::vec::Vec;
use core::f64::consts::PI;
use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{hole_structure_factor, reciprocal_basis, LatticeError, LatticeSpec, MaterialSpec};
use crate::linalg::generalized_hermitian_eigenvalues;

/// Smallest plane-wave set accepted by the solver.
pub const MIN_PLANE_WAVES: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PweConfig {
    /// Number of reciprocal-vector shells kept beyond G = 0.
    pub n_shells: usize,
    /// Density and modulus of the hole material relative to the matrix.
    pub contrast: f64,
    /// Bands returned per k-point.
    pub n_bands: usize,
}

impl Default for PweConfig {
    fn default() -> Self {
        Self { n_shells: 7, contrast: 1e-4, n_bands: 12 }
    }
}

/// Reciprocal vectors `i·b1 + j·b2` in complete shells of equal |G|, ordered
/// by shell and then by polar angle.
pub fn plane_wave_set(spec: &LatticeSpec, n_shells: usize) -> Vec<([i32; 2], [f64; 2])> {
    let [b1, b2] = reciprocal_basis(spec);
    let m = 2 * n_shells as i32 + 2;
    let mut all = Vec::new();
    for i in -m..=m {
        for j in -m..=m {
            let g = [f64::from(i) * b1[0] + f64::from(j) * b2[0], f64::from(i) * b1[1] + f64::from(j) * b2[1]];
            all.push(([i, j], g, g[0] * g[0] + g[1] * g[1]));
        }
    }
    all.sort_by(|a, b| a.2.total_cmp(&b.2));

    let scale = b1[0] * b1[0] + b1[1] * b1[1];
    let mut out = Vec::new();
    let mut shell = 0usize;
    let mut current = 0.0f64;
    let mut start = 0usize;
    for item in &all {
        if (item.2 - current).abs() > 1e-9 * scale {
            shell += 1;
            current = item.2;
            sort_by_angle(&mut out[start..]);
            start = out.len();
            if shell > n_shells {
                break;
            }
        }
        out.push((item.0, item.1));
    }
    sort_by_angle(&mut out[start..]);
    out
}

fn sort_by_angle(shell: &mut [([i32; 2], [f64; 2])]) {
    shell.sort_by(|a, b| libm::atan2(a.1[1], a.1[0]).total_cmp(&libm::atan2(b.1[1], b.1[0])));
}

/// Smallest shell count whose plane-wave set has at least `n_pw` members.
pub fn shells_for_min_plane_waves(spec: &LatticeSpec, n_pw: usize) -> usize {
    let mut shells = 1;
    while plane_wave_set(spec, shells).len() < n_pw {
        shells += 1;
    }
    shells
}

/// Assembled k-independent parts of the plane-wave operator for one lattice.
#[derive(Debug, Clone)]
pub struct PweSolver {
    g: Vec<[f64; 2]>,
    /// ρ(G-G')/ρ_matrix; μ(G-G')/μ_matrix is identical because both
    /// properties share the same contrast.
    density: DMatrix<Complex64>,
    /// Shear velocity squared, (µm/ns)².
    v2: f64,
    n_bands: usize,
}

impl PweSolver {
    pub fn new(spec: &LatticeSpec, material: &MaterialSpec, cfg: &PweConfig) -> Result<Self, LatticeError> {
        spec.validate()?;
        material.validate()?;
        if !(cfg.contrast > 0.0 && cfg.contrast <= 1.0) {
            return Err(LatticeError::InvalidGeometry("contrast must lie in (0, 1]"));
        }
        let set = plane_wave_set(spec, cfg.n_shells);
        let n = set.len();
        if n < MIN_PLANE_WAVES {
            return Err(LatticeError::TruncationTooSmall { n_pw: n });
        }
        let [b1, b2] = reciprocal_basis(spec);
        let delta = cfg.contrast - 1.0;
        let density = DMatrix::from_fn(n, n, |i, j| {
            let di = f64::from(set[i].0[0] - set[j].0[0]);
            let dj = f64::from(set[i].0[1] - set[j].0[1]);
            let dg = [di * b1[0] + dj * b2[0], di * b1[1] + dj * b2[1]];
            let s = hole_structure_factor(dg, spec) * delta;
            if i == j {
                s + 1.0
            } else {
                s
            }
        });
        // m/s → µm/ns
        let v = material.v_t * 1e-3;
        Ok(Self { g: set.into_iter().map(|(_, g)| g).collect(), density, v2: v * v, n_bands: cfg.n_bands })
    }

    pub fn n_plane_waves(&self) -> usize {
        self.g.len()
    }

    pub fn reciprocal_vectors(&self) -> &[[f64; 2]] {
        &self.g
    }

    /// Lowest eigenfrequencies (GHz, ascending) at wavevector `k` (1/µm).
    pub fn solve_k(&self, k: [f64; 2]) -> Result<Vec<f64>, LatticeError> {
        self.solve_indexed(0, k)
    }

    /// As [`solve_k`](Self::solve_k), tagging failures with `k_index`.
    pub fn solve_indexed(&self, k_index: usize, k: [f64; 2]) -> Result<Vec<f64>, LatticeError> {
        let fail = || LatticeError::SolverFailure { k_index, kx: k[0], ky: k[1] };
        let n = self.g.len();
        let kg: Vec<[f64; 2]> = self.g.iter().map(|g| [k[0] + g[0], k[1] + g[1]]).collect();
        let stiffness = DMatrix::from_fn(n, n, |i, j| {
            let d = kg[i][0] * kg[j][0] + kg[i][1] * kg[j][1];
            self.density[(i, j)] * (self.v2 * d)
        });
        let omega2 = generalized_hermitian_eigenvalues(&stiffness, self.density.clone()).ok_or_else(fail)?;
        let scale = omega2.iter().fold(0.0f64, |m, w| m.max(w.abs())).max(f64::MIN_POSITIVE);
        let mut freqs = Vec::with_capacity(self.n_bands.min(n));
        for &w2 in omega2.iter().take(self.n_bands.min(n)) {
            if !w2.is_finite() || w2 < -1e-9 * scale {
                return Err(fail());
            }
            freqs.push(libm::sqrt(w2.max(0.0)) / (2.0 * PI));
        }
        Ok(freqs)
    }
}

/// Sampled Γ–M–K–Γ path.
#[derive(Debug, Clone, PartialEq)]
pub struct KPath {
    pub points: Vec<[f64; 2]>,
    /// Cumulative path length, 1/µm.
    pub distance: Vec<f64>,
    /// Indices of Γ, M, K, Γ in `points`.
    pub vertices: [usize; 4],
}

pub const MIN_K_PER_SEGMENT: usize = 8;

pub fn k_path(spec: &LatticeSpec, n_per_segment: usize) -> Result<KPath, LatticeError> {
    if n_per_segment < MIN_K_PER_SEGMENT {
        return Err(LatticeError::InvalidGeometry("k-path needs at least 8 points per segment"));
    }
    let [gamma, m, k] = spec.high_symmetry_points();
    let corners = [gamma, m, k, gamma];
    let mut points = Vec::with_capacity(3 * n_per_segment + 1);
    for seg in 0..3 {
        let (p, q) = (corners[seg], corners[seg + 1]);
        for t in 0..n_per_segment {
            let s = t as f64 / n_per_segment as f64;
            points.push([p[0] + (q[0] - p[0]) * s, p[1] + (q[1] - p[1]) * s]);
        }
    }
    points.push(gamma);
    let mut distance = Vec::with_capacity(points.len());
    let mut acc = 0.0;
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            let prev = points[i - 1];
            acc += libm::hypot(p[0] - prev[0], p[1] - prev[1]);
        }
        distance.push(acc);
    }
    let n = n_per_segment;
    Ok(KPath { points, distance, vertices: [0, n, 2 * n, 3 * n] })
}

/// Eigenfrequencies along a k-path; row `i` holds the ascending bands at
/// `path.points[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandStructure {
    pub path: KPath,
    pub bands: Vec<Vec<f64>>,
    pub n_plane_waves: usize,
}

impl BandStructure {
    pub fn n_bands(&self) -> usize {
        self.bands.first().map_or(0, Vec::len)
    }

    /// Band `n` across every k-point.
    pub fn band(&self, n: usize) -> impl Iterator<Item = f64> + '_ {
        self.bands.iter().map(move |row| row[n])
    }
}

/// Sequential band-structure sweep along Γ–M–K–Γ.
pub fn band_structure(spec: &LatticeSpec, material: &MaterialSpec, n_k_per_segment: usize, cfg: &PweConfig) -> Result<BandStructure, LatticeError> {
    let solver = PweSolver::new(spec, material, cfg)?;
    let path = k_path(spec, n_k_per_segment)?;
    let bands = path.points.iter().enumerate().map(|(i, &k)| solver.solve_indexed(i, k)).collect::<Result<Vec<_>, _>>()?;
    Ok(BandStructure { path, bands, n_plane_waves: solver.n_plane_waves() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{detect_gaps, LatticeType};
    use approx::assert_abs_diff_eq;

    fn ge() -> MaterialSpec {
        MaterialSpec::GERMANIUM
    }

    #[test]
    fn shell_counts() {
        let spec = LatticeSpec::triangular(1.0, 0.3);
        let counts: Vec<usize> = (0..=7).map(|s| plane_wave_set(&spec, s).len()).collect();
        assert_eq!(counts, [1, 7, 13, 19, 31, 37, 43, 55]);
        assert_eq!(shells_for_min_plane_waves(&spec, 110), 14);
        // G-star symmetry: every G has its negative in the set
        let set = plane_wave_set(&spec, 7);
        for (idx, _) in &set {
            assert!(set.iter().any(|(j, _)| j[0] == -idx[0] && j[1] == -idx[1]));
        }
    }

    #[test]
    fn truncation_too_small() {
        let cfg = PweConfig { n_shells: 1, ..PweConfig::default() };
        let err = PweSolver::new(&LatticeSpec::triangular(1.0, 0.3), &ge(), &cfg).unwrap_err();
        assert_eq!(err, LatticeError::TruncationTooSmall { n_pw: 7 });
    }

    #[test]
    fn gamma_point_has_zero_acoustic_band() {
        for spec in [LatticeSpec::triangular(1.0, 0.35), LatticeSpec::honeycomb(1.0, 0.25), LatticeSpec::triangular(1.0, 0.0)] {
            let solver = PweSolver::new(&spec, &ge(), &PweConfig::default()).unwrap();
            let f = solver.solve_k([0.0, 0.0]).unwrap();
            assert!(f[0].abs() < 1e-6, "{:?}: {}", spec.lattice_type, f[0]);
        }
    }

    /// Folded free dispersion v|k+G|/2π over a much larger reciprocal set.
    fn empty_lattice_bands(spec: &LatticeSpec, k: [f64; 2], n: usize) -> Vec<f64> {
        let [b1, b2] = reciprocal_basis(spec);
        let v = ge().v_t * 1e-3;
        let mut f = Vec::new();
        for i in -12..=12 {
            for j in -12..=12 {
                let gx = k[0] + f64::from(i) * b1[0] + f64::from(j) * b2[0];
                let gy = k[1] + f64::from(i) * b1[1] + f64::from(j) * b2[1];
                f.push(v * libm::hypot(gx, gy) / (2.0 * PI));
            }
        }
        f.sort_by(f64::total_cmp);
        f.truncate(n);
        f
    }

    #[test]
    fn empty_lattice_matches_folded_free_dispersion() {
        let spec = LatticeSpec::triangular(1.0, 0.0);
        let solver = PweSolver::new(&spec, &ge(), &PweConfig { n_bands: 8, ..PweConfig::default() }).unwrap();
        let path = k_path(&spec, 8).unwrap();
        for &k in path.points.iter().skip(1) {
            let got = solver.solve_k(k).unwrap();
            let want = empty_lattice_bands(&spec, k, 8);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-6 * w.max(1.0), "k={k:?}: {g} vs {w}");
            }
        }
    }

    #[test]
    fn time_reversal_symmetry() {
        let spec = LatticeSpec::honeycomb(1.0, 0.22);
        let solver = PweSolver::new(&spec, &ge(), &PweConfig::default()).unwrap();
        for k in [[0.7, 0.3], [2.0, -1.1], [-0.4, 3.2]] {
            let a = solver.solve_k(k).unwrap();
            let b = solver.solve_k([-k[0], -k[1]]).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn frequency_scales_inversely_with_lattice_constant() {
        let cfg = PweConfig::default();
        let s1 = LatticeSpec::triangular(1.0, 0.3);
        let s2 = LatticeSpec::triangular(2.0, 0.3);
        let b1 = band_structure(&s1, &ge(), 8, &cfg).unwrap();
        let b2 = band_structure(&s2, &ge(), 8, &cfg).unwrap();
        for (r1, r2) in b1.bands.iter().zip(&b2.bands).skip(1) {
            for (f1, f2) in r1.iter().zip(r2) {
                assert!((f1 - 2.0 * f2).abs() < 1e-8 * f1.max(1.0), "{f1} vs {f2}");
            }
        }
    }

    /// Long-wavelength slope f/|k| with Richardson extrapolation in |k|.
    #[test]
    fn effective_medium_velocity_is_reduced() {
        let spec = LatticeSpec::triangular(1.0, 0.3);
        let solver = PweSolver::new(&spec, &ge(), &PweConfig::default()).unwrap();
        let slope = |h: f64| solver.solve_k([h, 0.0]).unwrap()[0] * 2.0 * PI / h;
        let (s1, s2) = (slope(0.02), slope(0.01));
        let v_eff = (4.0 * s2 - s1) / 3.0;
        assert!((s2 - v_eff).abs() / v_eff < 1e-3);
        assert!(v_eff < ge().v_t * 1e-3, "v_eff = {v_eff} µm/ns");
        assert!(v_eff > 0.3 * ge().v_t * 1e-3);
    }

    #[test]
    fn band_structure_shape_and_path() {
        let spec = LatticeSpec::triangular(1.0, 0.35);
        let bs = band_structure(&spec, &ge(), 8, &PweConfig::default()).unwrap();
        assert_eq!(bs.bands.len(), 25);
        assert_eq!(bs.path.vertices, [0, 8, 16, 24]);
        assert_eq!(bs.n_plane_waves, 55);
        for row in &bs.bands {
            assert!(row.windows(2).all(|w| w[0] <= w[1]));
            assert!(row.iter().all(|&f| f >= 0.0));
        }
        assert!(matches!(k_path(&spec, 7), Err(LatticeError::InvalidGeometry(_))));
        let again = band_structure(&spec, &ge(), 8, &PweConfig::default()).unwrap();
        assert_eq!(bs, again);
    }

    #[test]
    fn uniform_membrane_has_no_gap() {
        let spec = LatticeSpec { lattice_type: LatticeType::Triangular, a_um: 1.0, r_um: 0.0, defect_missing_holes: 0 };
        let bs = band_structure(&spec, &ge(), 10, &PweConfig::default()).unwrap();
        assert!(detect_gaps(&bs).is_empty());
    }
}
