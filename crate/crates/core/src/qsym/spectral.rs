//! Dense Hermitian spectral helpers: eigenvalues, range/kernel projectors and
//! operator norms.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

/// Eigenvalue threshold below which a Hermitian PSD operator is treated as
/// vanishing.
pub const SPECTRAL_ZERO: f64 = 1e-8;

fn hermitian_part(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Ascending eigenvalues of the Hermitian part of `m`.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(hermitian_part(m))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn min_eigenvalue(m: &DMatrix<Complex64>) -> f64 {
    hermitian_eigenvalues(m).first().copied().unwrap_or(0.0)
}

/// Orthogonal projector onto the span of eigenvectors whose eigenvalue
/// satisfies `keep`.
fn spectral_projector(m: &DMatrix<Complex64>, keep: impl Fn(f64) -> bool) -> DMatrix<Complex64> {
    let dim = m.nrows();
    let eig = SymmetricEigen::new(hermitian_part(m));
    let mut p = DMatrix::zeros(dim, dim);
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if keep(lambda) {
            let v = eig.eigenvectors.column(i);
            p += &v * v.adjoint();
        }
    }
    p
}

/// Projector onto `closure(Ran(m))` for Hermitian PSD `m`.
pub fn range_projector(m: &DMatrix<Complex64>, zero_tol: f64) -> DMatrix<Complex64> {
    spectral_projector(m, |l| l.abs() > zero_tol)
}

/// Projector onto `Ker(m)` for Hermitian `m`.
pub fn kernel_projector(m: &DMatrix<Complex64>, zero_tol: f64) -> DMatrix<Complex64> {
    spectral_projector(m, |l| l.abs() <= zero_tol)
}

/// Orthonormal basis (as columns) of the eigenspaces selected by `keep`.
pub fn eigenbasis(m: &DMatrix<Complex64>, keep: impl Fn(f64) -> bool) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(hermitian_part(m));
    let cols: Vec<usize> = (0..m.nrows())
        .filter(|&i| keep(eig.eigenvalues[i]))
        .collect();
    DMatrix::from_fn(m.nrows(), cols.len(), |r, c| eig.eigenvectors[(r, cols[c])])
}

/// Largest singular value. Empty matrices have norm 0.
pub fn op_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.singular_values().iter().copied().fold(0.0, f64::max)
}
