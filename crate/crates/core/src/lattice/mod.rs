//! Two-dimensional phononic crystals: a triangular or honeycomb array of
//! circular holes in a germanium membrane.
//!
//! Band structures come from a scalar (anti-plane shear) plane-wave
//! expansion, see [`pwe`]. Lengths are in µm, wavevectors in 1/µm and
//! frequencies in GHz throughout this module.

mod gaps;
pub mod pwe;

pub use gaps::{detect_gaps, BandGap, MIN_GAP_WIDTH_GHZ};
pub use pwe::{band_structure, k_path, BandStructure, KPath, PweConfig, PweSolver};

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("invalid lattice geometry: {0}")]
    InvalidGeometry(&'static str),
    #[error("invalid material: {0}")]
    InvalidMaterial(&'static str),
    #[error("plane-wave truncation too small: {n_pw} plane waves (need at least 9)")]
    TruncationTooSmall { n_pw: usize },
    #[error("eigensolver failed at k-point {k_index} (k = [{kx}, {ky}] 1/µm)")]
    SolverFailure { k_index: usize, kx: f64, ky: f64 },
}

/// Acoustic properties of the membrane material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialSpec {
    /// Mass density, kg/m³.
    pub rho: f64,
    /// Longitudinal sound velocity, m/s.
    pub v_s: f64,
    /// Transverse sound velocity, m/s.
    pub v_t: f64,
}

impl MaterialSpec {
    /// Germanium.
    pub const GERMANIUM: MaterialSpec = MaterialSpec { rho: 5323.0, v_s: 5000.0, v_t: 3250.0 };

    pub fn validate(&self) -> Result<(), LatticeError> {
        if !(self.rho > 0.0) {
            return Err(LatticeError::InvalidMaterial("density must be positive"));
        }
        if !(self.v_t > 0.0 && self.v_t < self.v_s) {
            return Err(LatticeError::InvalidMaterial("need 0 < v_t < v_s"));
        }
        Ok(())
    }
}

impl Default for MaterialSpec {
    fn default() -> Self {
        Self::GERMANIUM
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeType {
    Triangular,
    /// Two holes per triangular Bravais cell, at (a1 + a2)/3 and 2(a1 + a2)/3.
    Honeycomb,
}

impl LatticeType {
    pub fn name(self) -> &'static str {
        match self {
            LatticeType::Triangular => "triangular",
            LatticeType::Honeycomb => "honeycomb",
        }
    }

    /// Largest r/a for which neighbouring holes stay disjoint.
    pub fn max_radius_ratio(self) -> f64 {
        match self {
            LatticeType::Triangular => 0.5,
            LatticeType::Honeycomb => 0.5 / SQRT3,
        }
    }
}

impl core::str::FromStr for LatticeType {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "triangular" => Ok(LatticeType::Triangular),
            "honeycomb" => Ok(LatticeType::Honeycomb),
            _ => Err(LatticeError::InvalidGeometry("lattice type must be triangular or honeycomb")),
        }
    }
}

/// Recommended hole-radius window, as a fraction of the lattice constant.
pub const DESIGN_WINDOW_R_OVER_A: (f64, f64) = (0.2, 0.4);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    pub lattice_type: LatticeType,
    /// Lattice constant, µm.
    pub a_um: f64,
    /// Hole radius, µm.
    pub r_um: f64,
    /// Holes removed to form the cavity defect (0–3).
    pub defect_missing_holes: u8,
}

impl LatticeSpec {
    pub fn triangular(a_um: f64, r_over_a: f64) -> Self {
        Self { lattice_type: LatticeType::Triangular, a_um, r_um: r_over_a * a_um, defect_missing_holes: 1 }
    }

    pub fn honeycomb(a_um: f64, r_over_a: f64) -> Self {
        Self { lattice_type: LatticeType::Honeycomb, a_um, r_um: r_over_a * a_um, defect_missing_holes: 1 }
    }

    pub fn r_over_a(&self) -> f64 {
        self.r_um / self.a_um
    }

    /// Radius zero is allowed (uniform membrane).
    pub fn validate(&self) -> Result<(), LatticeError> {
        if !(self.a_um > 0.0) {
            return Err(LatticeError::InvalidGeometry("lattice constant must be positive"));
        }
        if !(self.r_um >= 0.0) {
            return Err(LatticeError::InvalidGeometry("hole radius must be non-negative"));
        }
        if self.r_over_a() >= self.lattice_type.max_radius_ratio() {
            return Err(LatticeError::InvalidGeometry("holes overlap"));
        }
        if self.defect_missing_holes > 3 {
            return Err(LatticeError::InvalidGeometry("defect must remove 0 to 3 holes"));
        }
        Ok(())
    }

    pub fn in_design_window(&self) -> bool {
        let ra = self.r_over_a();
        ra >= DESIGN_WINDOW_R_OVER_A.0 - 1e-12 && ra <= DESIGN_WINDOW_R_OVER_A.1 + 1e-12
    }

    /// Real-space primitive vectors, µm.
    pub fn primitive_vectors(&self) -> [[f64; 2]; 2] {
        let a = self.a_um;
        [[a, 0.0], [0.5 * a, 0.5 * SQRT3 * a]]
    }

    pub fn cell_area(&self) -> f64 {
        0.5 * SQRT3 * self.a_um * self.a_um
    }

    /// Hole centres within the primitive cell, µm.
    pub fn basis_sites(&self) -> Vec<[f64; 2]> {
        match self.lattice_type {
            LatticeType::Triangular => alloc::vec![[0.0, 0.0]],
            LatticeType::Honeycomb => {
                let [a1, a2] = self.primitive_vectors();
                let c = [(a1[0] + a2[0]) / 3.0, (a1[1] + a2[1]) / 3.0];
                alloc::vec![c, [2.0 * c[0], 2.0 * c[1]]]
            }
        }
    }

    /// Area fraction occupied by holes.
    pub fn filling_fraction(&self) -> f64 {
        self.basis_sites().len() as f64 * PI * self.r_um * self.r_um / self.cell_area()
    }

    /// High-symmetry points Γ, M, K of the hexagonal Brillouin zone, 1/µm.
    pub fn high_symmetry_points(&self) -> [[f64; 2]; 3] {
        let a = self.a_um;
        let m = [0.0, 2.0 * PI / (SQRT3 * a)];
        let k = [2.0 * PI / (3.0 * a), 2.0 * PI / (SQRT3 * a)];
        [[0.0, 0.0], m, k]
    }
}

/// Lattice constant from the target band-gap centre, a ≈ v_s / f_center, µm.
pub fn lattice_constant_for_target(f_center_ghz: f64, material: &MaterialSpec) -> f64 {
    // (m/s) / GHz = 1e-9 m = 1e-3 µm
    material.v_s / f_center_ghz * 1e-3
}

/// Reciprocal basis b1, b2 (1/µm) with bᵢ·aⱼ = 2π δᵢⱼ.
pub fn reciprocal_basis(spec: &LatticeSpec) -> [[f64; 2]; 2] {
    let s = 2.0 * PI / spec.a_um;
    [[s, -s / SQRT3], [0.0, 2.0 * s / SQRT3]]
}

/// Fourier coefficient of the hole indicator function at reciprocal vector `g`.
///
/// `F` at G = 0; `F₁ · 2J₁(|G|r)/(|G|r) · Σₛ exp(-iG·s)` otherwise, where
/// `F₁` is the single-hole filling fraction and `s` runs over hole sites.
pub fn hole_structure_factor(g: [f64; 2], spec: &LatticeSpec) -> Complex64 {
    let r = spec.r_um;
    let f1 = PI * r * r / spec.cell_area();
    let gn = libm::hypot(g[0], g[1]);
    let form = if gn * r < 1e-12 {
        f1
    } else {
        let x = gn * r;
        f1 * 2.0 * libm::j1(x) / x
    };
    spec.basis_sites().iter().map(|s| Complex64::from_polar(form, -(g[0] * s[0] + g[1] * s[1]))).sum()
}
