//! Matrix exponential by scaling and squaring of a truncated Taylor series.

use nalgebra::DMatrix;
use num_complex::Complex64;

const TOL: f64 = 1e-16;
const MAX_TERMS: usize = 60;

fn one_norm(m: &DMatrix<Complex64>) -> f64 {
    m.column_iter().map(|c| c.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// exp(m) for a small dense complex matrix.
pub fn expm(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    let norm = one_norm(m);
    let squarings = if norm > 0.5 { libm::ceil(libm::log2(norm / 0.5)) as u32 } else { 0 };
    let scaled = m.scale(libm::pow(2.0, -f64::from(squarings)));

    let mut result = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=MAX_TERMS {
        term = (&term * &scaled).scale(1.0 / k as f64);
        result += &term;
        if one_norm(&term) < TOL * one_norm(&result) {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// U = exp(-2πi H t) for H in MHz and t in µs.
pub fn propagator(h_mhz: &DMatrix<Complex64>, t_us: f64) -> DMatrix<Complex64> {
    let generator = h_mhz.map(|z| z * Complex64::new(0.0, -2.0 * core::f64::consts::PI * t_us));
    expm(&generator)
}
