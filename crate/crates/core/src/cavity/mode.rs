use alloc::vec::Vec;
use core::f64::consts::PI;

use super::CavityError;
use crate::lattice::MaterialSpec;

/// FWHM / σ for a Gaussian.
pub(crate) fn fwhm_per_sigma() -> f64 {
    2.0 * libm::sqrt(2.0 * core::f64::consts::LN_2)
}

/// Gaussian hole envelope ψ(r) ∝ exp(-|r - r0|²/(2σ²)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitEnvelope {
    /// Centre, nm.
    pub r0_nm: [f64; 2],
    /// Gaussian width σ of ψ, nm.
    pub sigma_nm: f64,
    /// Dot length used for the phonon-bottleneck form factor, nm.
    pub dot_length_nm: f64,
}

impl QubitEnvelope {
    pub const DEFAULT_FWHM_NM: f64 = 180.0;

    pub fn from_fwhm(fwhm_nm: f64, r0_nm: [f64; 2], dot_length_nm: f64) -> Self {
        Self { r0_nm, sigma_nm: fwhm_nm / fwhm_per_sigma(), dot_length_nm }
    }

    pub fn fwhm_nm(&self) -> f64 {
        self.sigma_nm * fwhm_per_sigma()
    }

    pub fn with_sigma(self, sigma_nm: f64) -> Self {
        Self { sigma_nm, ..self }
    }

    pub fn with_center(self, r0_nm: [f64; 2]) -> Self {
        Self { r0_nm, ..self }
    }

    /// |ψ|² at `r`, peak 1.
    pub fn density(&self, r: [f64; 2]) -> f64 {
        let dx = r[0] - self.r0_nm[0];
        let dy = r[1] - self.r0_nm[1];
        libm::exp(-(dx * dx + dy * dy) / (self.sigma_nm * self.sigma_nm))
    }
}

impl Default for QubitEnvelope {
    fn default() -> Self {
        Self::from_fwhm(Self::DEFAULT_FWHM_NM, [0.0, 0.0], Self::DEFAULT_FWHM_NM)
    }
}

/// Uniform square sample grid centred on the mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Samples per side (even, so the centre is a node).
    pub n: usize,
    /// Window side length in units of max(wavelength, envelope width).
    pub window_factor: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { n: 512, window_factor: 8.0 }
    }
}

impl GridSpec {
    /// Smallest even grid of at least `min_n` samples that resolves the mode.
    pub fn resolving(wavelength_nm: f64, envelope_width_nm: f64, window_factor: f64, min_n: usize) -> Self {
        let window = window_factor * wavelength_nm.max(envelope_width_nm);
        let h_max = wavelength_nm.min(envelope_width_nm) / 10.0;
        let need = libm::ceil(window / h_max) as usize;
        let n = need.max(min_n);
        Self { n: n + (n & 1), window_factor }
    }
}

/// Real strain-field shape sampled on a square grid, peak |ε| = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityMode {
    pub f_ghz: f64,
    pub wavelength_nm: f64,
    pub envelope_width_nm: f64,
    pub center_nm: [f64; 2],
    pub q: f64,
    /// Samples per side.
    pub n: usize,
    pub spacing_nm: f64,
    /// Row-major samples, index `iy * n + ix`.
    pub field: Vec<f64>,
}

impl CavityMode {
    /// Samples `f(x, y)` on the grid described by the other arguments and
    /// normalizes to peak |ε| = 1.
    #[allow(clippy::too_many_arguments)]
    pub fn from_fn(
        f_ghz: f64,
        wavelength_nm: f64,
        envelope_width_nm: f64,
        center_nm: [f64; 2],
        q: f64,
        n: usize,
        spacing_nm: f64,
        mut shape: impl FnMut(f64, f64) -> f64,
    ) -> Self {
        let mut field = Vec::with_capacity(n * n);
        for iy in 0..n {
            let y = center_nm[1] + (iy as f64 - (n / 2) as f64) * spacing_nm;
            for ix in 0..n {
                let x = center_nm[0] + (ix as f64 - (n / 2) as f64) * spacing_nm;
                field.push(shape(x, y));
            }
        }
        let peak = field.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if peak > 0.0 {
            field.iter_mut().for_each(|v| *v /= peak);
        }
        Self { f_ghz, wavelength_nm, envelope_width_nm, center_nm, q, n, spacing_nm, field }
    }

    pub fn coordinate(&self, i: usize, axis: usize) -> f64 {
        self.center_nm[axis] + (i as f64 - (self.n / 2) as f64) * self.spacing_nm
    }

    /// Lower and upper grid coordinates along each axis, nm.
    pub fn extent(&self) -> ([f64; 2], [f64; 2]) {
        let lo = [self.coordinate(0, 0), self.coordinate(0, 1)];
        let hi = [self.coordinate(self.n - 1, 0), self.coordinate(self.n - 1, 1)];
        (lo, hi)
    }

    pub fn at(&self, ix: usize, iy: usize) -> f64 {
        self.field[iy * self.n + ix]
    }

    /// Largest |ε| on the outermost ring of samples.
    pub fn boundary_max(&self) -> f64 {
        let n = self.n;
        let mut m = 0.0f64;
        for i in 0..n {
            for (ix, iy) in [(i, 0), (i, n - 1), (0, i), (n - 1, i)] {
                m = m.max(self.at(ix, iy).abs());
            }
        }
        m
    }
}

/// Standing-wave × Gaussian stand-in for a localized cavity mode:
/// ε(r) = cos(2π|r - c|/λ) · exp(-|r - c|²/(2w²)), with λ = v_s / f.
pub fn synth_cavity_mode(
    f_ghz: f64,
    material: &MaterialSpec,
    envelope_width_nm: f64,
    center_nm: [f64; 2],
    q: f64,
    grid: &GridSpec,
) -> Result<CavityMode, CavityError> {
    if !(f_ghz > 0.0) || !(envelope_width_nm > 0.0) {
        return Err(CavityError::InvalidParameter("frequency and envelope width must be positive"));
    }
    if grid.n < 2 || !(grid.window_factor > 0.0) {
        return Err(CavityError::InvalidParameter("grid needs n >= 2 and a positive window"));
    }
    // (m/s) / GHz = nm
    let wavelength = material.v_s / f_ghz;
    let n = grid.n + (grid.n & 1);
    let spacing = grid.window_factor * wavelength.max(envelope_width_nm) / n as f64;
    let required = wavelength.min(envelope_width_nm) / 10.0;
    if spacing > required {
        return Err(CavityError::GridTooCoarse { spacing_nm: spacing, required_nm: required });
    }
    let k = 2.0 * PI / wavelength;
    let inv2w2 = 1.0 / (2.0 * envelope_width_nm * envelope_width_nm);
    let [cx, cy] = center_nm;
    Ok(CavityMode::from_fn(f_ghz, wavelength, envelope_width_nm, center_nm, q, n, spacing, |x, y| {
        let r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
        libm::cos(k * libm::sqrt(r2)) * libm::exp(-r2 * inv2w2)
    }))
}
