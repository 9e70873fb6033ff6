//! Dense Hermitian eigen-solvers on top of nalgebra.

use alloc::vec::Vec;
use nalgebra::{Cholesky, DMatrix, SymmetricEigen};
use num_complex::Complex64;

const EIGEN_EPS: f64 = 1e-14;
const EIGEN_MAX_ITER: usize = 10_000;

/// Eigenvalues of `a x = λ b x` with `a` Hermitian and `b` Hermitian
/// positive definite, ascending. `None` if `b` is not positive definite or
/// the QR iteration fails to converge.
///
/// Reduced to a standard problem through the Cholesky factor `b = l lᴴ`:
/// `c = l⁻¹ a l⁻ᴴ`.
pub fn generalized_hermitian_eigenvalues(a: &DMatrix<Complex64>, b: DMatrix<Complex64>) -> Option<Vec<f64>> {
    let chol = Cholesky::new(b)?;
    let l = chol.l();
    // Complex Cholesky happily takes square roots of negative pivots.
    if l.diagonal().iter().any(|d| !(d.re > 0.0) || d.im.abs() > 1e-12 * d.re) {
        return None;
    }
    let y = l.solve_lower_triangular(a)?;
    let c = l.solve_lower_triangular(&y.adjoint())?;
    hermitian_eigenvalues(hermitize(c))
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: DMatrix<Complex64>) -> Option<Vec<f64>> {
    let eig = SymmetricEigen::try_new(m, EIGEN_EPS, EIGEN_MAX_ITER)?;
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Some(values)
}

/// Eigenpairs of a Hermitian matrix sorted by ascending eigenvalue; the
/// vectors are the columns of the returned matrix.
pub fn hermitian_eigenpairs(m: DMatrix<Complex64>) -> Option<(Vec<f64>, DMatrix<Complex64>)> {
    let eig = SymmetricEigen::try_new(m, EIGEN_EPS, EIGEN_MAX_ITER)?;
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Some((values, vectors))
}

fn hermitize(m: DMatrix<Complex64>) -> DMatrix<Complex64> {
    let adj = m.adjoint();
    (m + adj).scale(0.5)
}
