//! Thin wrappers over nalgebra for the handful of dense factorizations the
//! pipeline needs.

use nalgebra::{DMatrix, DVector, Matrix4, SymmetricEigen, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative cutoff below which a singular value counts as zero.
pub(crate) const RANK_TOL: f64 = 1e-10;

pub(crate) fn singular_values(a: &DMatrix<f64>) -> DVector<f64> {
    a.clone().svd(false, false).singular_values
}

/// (sigma_max, sigma_min) of a matrix with at least as many rows as columns.
pub(crate) fn extreme_singular_values(a: &DMatrix<f64>) -> (f64, f64) {
    let sv = singular_values(a);
    let max = sv.iter().cloned().fold(0.0_f64, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    (max, min)
}

pub(crate) fn check_full_column_rank(a: &DMatrix<f64>) -> Result<()> {
    if a.nrows() < a.ncols() {
        return Err(Error::SingularProtocol { ratio: 0.0 });
    }
    let (max, min) = extreme_singular_values(a);
    if max == 0.0 || min < RANK_TOL * max {
        return Err(Error::SingularProtocol {
            ratio: if max == 0.0 { 0.0 } else { min / max },
        });
    }
    Ok(())
}

/// Solves `a x = b`: LU for square systems, SVD least squares otherwise.
pub(crate) fn solve(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    if a.nrows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            actual: b.len(),
        });
    }
    check_full_column_rank(a)?;
    if a.is_square() {
        a.clone().lu().solve(b).ok_or(Error::SingularProtocol { ratio: 0.0 })
    } else {
        let svd = a.clone().svd(true, true);
        let max = svd.singular_values.max();
        svd.solve(b, RANK_TOL * max)
            .map_err(|e| Error::InvalidArgument(e.to_string()))
    }
}

/// Hermitian eigendecomposition of a 4x4 matrix, eigenvalues descending.
pub(crate) fn hermitian_eigen(m: &Matrix4<Complex64>) -> (Vector4<f64>, Matrix4<Complex64>) {
    let eig = SymmetricEigen::new(*m);
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = Vector4::from_fn(|i, _| eig.eigenvalues[order[i]]);
    let vectors = Matrix4::from_fn(|r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Eigenvalues of a Hermitian matrix with entries below `1e-12 * ||m||_F`
/// snapped to zero.
pub(crate) fn hermitian_eigenvalues(m: &Matrix4<Complex64>) -> Vector4<f64> {
    let cutoff = 1e-12 * m.norm();
    let (mut values, _) = hermitian_eigen(m);
    for v in values.iter_mut() {
        if v.abs() < cutoff {
            *v = 0.0;
        }
    }
    values
}

/// Applies `f` to the spectrum of a Hermitian matrix.
pub(crate) fn hermitian_apply(m: &Matrix4<Complex64>, f: impl Fn(f64) -> f64) -> Matrix4<Complex64> {
    let (values, vectors) = hermitian_eigen(m);
    let cutoff = 1e-12 * m.norm();
    let mut out = Matrix4::zeros();
    for k in 0..4 {
        let lam = if values[k].abs() < cutoff { 0.0 } else { values[k] };
        let fl = f(lam);
        if fl == 0.0 {
            continue;
        }
        let v = vectors.column(k);
        out += v * v.adjoint() * Complex64::new(fl, 0.0);
    }
    out
}
