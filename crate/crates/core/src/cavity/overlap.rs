use alloc::vec::Vec;

use super::{CavityError, CavityMode, QubitEnvelope};

/// Envelope half-widths (in σ) that must fit inside the grid.
const SUPPORT_SIGMAS: f64 = 4.0;

/// Normalized overlap |∫ε|ψ|²| / (‖ε‖₂ ‖|ψ|²‖₂), midpoint rule on the mode grid.
///
/// Lies in [0, 1] by Cauchy–Schwarz and is invariant under rescaling ε.
pub fn overlap_normalized(mode: &CavityMode, qubit: &QubitEnvelope) -> Result<f64, CavityError> {
    let (lo, hi) = mode.extent();
    let reach = SUPPORT_SIGMAS * qubit.sigma_nm;
    for axis in 0..2 {
        if qubit.r0_nm[axis] - reach < lo[axis] || qubit.r0_nm[axis] + reach > hi[axis] {
            return Err(CavityError::QubitOutsideGrid);
        }
    }
    let n = mode.n;
    let xs: Vec<f64> = (0..n).map(|i| mode.coordinate(i, 0)).collect();
    let ys: Vec<f64> = (0..n).map(|i| mode.coordinate(i, 1)).collect();
    let inv_s2 = 1.0 / (qubit.sigma_nm * qubit.sigma_nm);
    // |ψ|² separates into x and y factors.
    let px: Vec<f64> = xs.iter().map(|x| libm::exp(-(x - qubit.r0_nm[0]) * (x - qubit.r0_nm[0]) * inv_s2)).collect();
    let py: Vec<f64> = ys.iter().map(|y| libm::exp(-(y - qubit.r0_nm[1]) * (y - qubit.r0_nm[1]) * inv_s2)).collect();

    let (mut cross, mut eps2, mut psi4) = (0.0, 0.0, 0.0);
    for (iy, row) in mode.field.chunks_exact(n).enumerate() {
        let wy = py[iy];
        let mut c = 0.0;
        let mut e = 0.0;
        for (ix, &v) in row.iter().enumerate() {
            c += v * px[ix];
            e += v * v;
        }
        cross += c * wy;
        eps2 += e;
        psi4 += wy * wy;
    }
    let px4: f64 = px.iter().map(|p| p * p).sum();
    psi4 *= px4;
    if eps2 == 0.0 || psi4 == 0.0 {
        return Ok(0.0);
    }
    Ok((cross.abs() / libm::sqrt(eps2 * psi4)).min(1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaSweep {
    /// (σ nm, overlap) in input order.
    pub points: Vec<(f64, f64)>,
    pub argmax: usize,
}

impl SigmaSweep {
    /// Maximum strictly inside the swept range.
    pub fn interior_maximum(&self) -> bool {
        self.points.len() > 2 && self.argmax > 0 && self.argmax + 1 < self.points.len()
    }

    pub fn best(&self) -> (f64, f64) {
        self.points[self.argmax]
    }
}

pub fn sigma_sweep(mode: &CavityMode, qubit: &QubitEnvelope, sigmas_nm: &[f64]) -> Result<SigmaSweep, CavityError> {
    if sigmas_nm.is_empty() {
        return Err(CavityError::InvalidParameter("empty sigma range"));
    }
    let points = sigmas_nm.iter().map(|&s| overlap_normalized(mode, &qubit.with_sigma(s)).map(|o| (s, o))).collect::<Result<Vec<_>, _>>()?;
    let argmax = points.iter().enumerate().fold(0, |best, (i, p)| if p.1 > points[best].1 { i } else { best });
    Ok(SigmaSweep { points, argmax })
}
