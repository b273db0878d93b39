//! Density matrices, their real 16-component parameterization, and the
//! distance measures used to compare reconstructions.
//!
//! Basis order is fixed to `{HH, HV, VH, VV}` throughout the crate.

use std::fmt;
use std::path::Path;

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::{DIM, VEC_LEN};

/// Absolute tolerance for conjugate symmetry.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Positions of the diagonal entries `rho_11, rho_22, rho_33, rho_44` inside a
/// [`StateVector`] (zero-based).
pub const DIAGONAL_INDICES: [usize; 4] = [0, 7, 12, 15];

/// A 4x4 complex matrix describing a two-qubit state.
///
/// Positivity is deliberately not enforced: linear inversion routinely
/// produces matrices with small negative eigenvalues and those are kept as is.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(Matrix4<Complex64>);

/// `vec(rho)`: the 16 real parameters of a Hermitian 4x4 matrix in the order
/// `[rho11, Re rho12, Im rho12, Re rho13, Im rho13, Re rho14, Im rho14, rho22,
/// Re rho23, Im rho23, Re rho24, Im rho24, rho33, Re rho34, Im rho34, rho44]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateVector(pub [f64; VEC_LEN]);

#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    /// Sorted descending.
    pub eigenvalues: Vector4<f64>,
    /// Column `k` belongs to `eigenvalues[k]`.
    pub eigenvectors: Matrix4<Complex64>,
}

impl SpectralDecomposition {
    pub fn reconstruct(&self) -> Matrix4<Complex64> {
        let mut out = Matrix4::zeros();
        for k in 0..DIM {
            let v = self.eigenvectors.column(k);
            out += v * v.adjoint() * Complex64::new(self.eigenvalues[k], 0.0);
        }
        out
    }
}

impl DensityMatrix {
    /// Validates conjugate symmetry to [`HERMITIAN_TOL`].
    pub fn new(m: Matrix4<Complex64>) -> Result<Self> {
        let asym = max_asymmetry(&m);
        if asym.is_nan() || asym > HERMITIAN_TOL {
            return Err(Error::NotHermitian { max_asymmetry: asym });
        }
        Ok(DensityMatrix(m))
    }

    /// Wraps a matrix without checking it. Used for transcribed data that is
    /// validated separately.
    pub fn from_raw(m: Matrix4<Complex64>) -> Self {
        DensityMatrix(m)
    }

    pub fn from_rows(rows: [[Complex64; DIM]; DIM]) -> Result<Self> {
        Self::new(Matrix4::from_fn(|r, c| rows[r][c]))
    }

    /// `|psi><psi|` for a (not necessarily normalized) amplitude vector.
    pub fn pure(amplitudes: &[Complex64; DIM]) -> Self {
        let v = Vector4::from_column_slice(amplitudes);
        DensityMatrix(v * v.adjoint())
    }

    pub fn zeros() -> Self {
        DensityMatrix(Matrix4::zeros())
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(Matrix4::identity() * Complex64::new(0.25, 0.0))
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn max_asymmetry(&self) -> f64 {
        max_asymmetry(&self.0)
    }

    pub fn is_hermitian(&self) -> bool {
        self.max_asymmetry() <= HERMITIAN_TOL
    }

    /// Divides by the (real part of the) trace.
    pub fn normalized(&self) -> Result<Self> {
        let tr = self.trace().re;
        if tr.abs() < 1e-300 || !tr.is_finite() {
            return Err(Error::DegenerateData { trace: tr });
        }
        Ok(DensityMatrix(self.0 / Complex64::new(tr, 0.0)))
    }

    pub fn spectrum(&self) -> SpectralDecomposition {
        let (eigenvalues, eigenvectors) = linalg::hermitian_eigen(&self.0);
        SpectralDecomposition {
            eigenvalues,
            eigenvectors,
        }
    }

    /// Smallest eigenvalue; negative for nonphysical reconstructions.
    pub fn min_eigenvalue(&self) -> f64 {
        linalg::hermitian_eigenvalues(&self.0)[DIM - 1]
    }

    /// Unit trace and positive semidefinite, both within `tol`.
    pub fn is_physical(&self, tol: f64) -> bool {
        self.is_hermitian() && (self.trace().re - 1.0).abs() <= tol && self.min_eigenvalue() >= -tol
    }

    /// Eigenvalues clamped at zero, trace renormalized to one.
    pub fn clamped(&self) -> Result<Self> {
        let m = linalg::hermitian_apply(&self.0, |l| l.max(0.0));
        DensityMatrix(m).normalized()
    }

    pub fn sub(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix(self.0 - other.0)
    }

    /// Largest difference over the real and imaginary parts of all entries.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        (self.0 - other.0)
            .iter()
            .map(|z| z.re.abs().max(z.im.abs()))
            .fold(0.0, f64::max)
    }

    /// Expectation value `Tr(O rho)`.
    pub fn expectation(&self, observable: &Matrix4<Complex64>) -> Complex64 {
        (observable * self.0).trace()
    }

    pub fn to_json(&self) -> DensityMatrixJson {
        DensityMatrixJson::from(self)
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::fixture(path, e.to_string()))?;
        let doc: DensityMatrixJson = serde_json::from_str(&text).map_err(|e| Error::fixture(path, e.to_string()))?;
        doc.into_matrix().map_err(|e| Error::fixture(path, e.to_string()))
    }
}

impl fmt::Display for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..DIM {
            for c in 0..DIM {
                let z = self.0[(r, c)];
                if c > 0 {
                    write!(f, "  ")?;
                }
                write!(
                    f,
                    "{:>8.4} {} {:.4}i",
                    z.re,
                    if z.im < 0.0 { '-' } else { '+' },
                    z.im.abs()
                )?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn max_asymmetry(m: &Matrix4<Complex64>) -> f64 {
    let mut worst = 0.0_f64;
    for r in 0..DIM {
        for c in r..DIM {
            let d = (m[(r, c)] - m[(c, r)].conj()).norm();
            if d.is_nan() {
                return f64::NAN;
            }
            worst = worst.max(d);
        }
    }
    worst
}

/// JSON form `{"dim": 4, "entries": [[[re, im], ...], ...]}`, row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityMatrixJson {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

/// Rounds to 10 significant digits.
pub(crate) fn sig10(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.9e}").parse().unwrap_or(v)
}

impl From<&DensityMatrix> for DensityMatrixJson {
    fn from(rho: &DensityMatrix) -> Self {
        let entries = (0..DIM)
            .map(|r| {
                (0..DIM)
                    .map(|c| {
                        let z = rho.0[(r, c)];
                        [sig10(z.re), sig10(z.im)]
                    })
                    .collect()
            })
            .collect();
        DensityMatrixJson { dim: DIM, entries }
    }
}

impl DensityMatrixJson {
    /// Parses without the Hermitian check; callers decide what to enforce.
    pub fn into_matrix(self) -> Result<DensityMatrix> {
        if self.dim != DIM {
            return Err(Error::DimensionMismatch {
                expected: DIM,
                actual: self.dim,
            });
        }
        if self.entries.len() != DIM {
            return Err(Error::DimensionMismatch {
                expected: DIM,
                actual: self.entries.len(),
            });
        }
        let mut m = Matrix4::zeros();
        for (r, row) in self.entries.iter().enumerate() {
            if row.len() != DIM {
                return Err(Error::DimensionMismatch {
                    expected: DIM,
                    actual: row.len(),
                });
            }
            for (c, [re, im]) in row.iter().enumerate() {
                if !re.is_finite() || !im.is_finite() {
                    return Err(Error::NonFinite { index: r * DIM + c });
                }
                m[(r, c)] = Complex64::new(*re, *im);
            }
        }
        Ok(DensityMatrix::from_raw(m))
    }
}

impl StateVector {
    pub fn new(x: [f64; VEC_LEN]) -> Result<Self> {
        if let Some(index) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(StateVector(x))
    }

    pub fn from_slice(x: &[f64]) -> Result<Self> {
        let arr: [f64; VEC_LEN] = x.try_into().map_err(|_| Error::DimensionMismatch {
            expected: VEC_LEN,
            actual: x.len(),
        })?;
        Self::new(arr)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `x1 + x8 + x13 + x16`.
    pub fn trace(&self) -> f64 {
        DIAGONAL_INDICES.iter().map(|&i| self.0[i]).sum()
    }

    /// `Tr[rho(x)^2]` computed from the components:
    /// `2 sum x_i^2 - (x1^2 + x8^2 + x13^2 + x16^2)`.
    pub fn hs_norm_sq(&self) -> f64 {
        let all: f64 = self.0.iter().map(|v| v * v).sum();
        let diag: f64 = DIAGONAL_INDICES.iter().map(|&i| self.0[i] * self.0[i]).sum();
        2.0 * all - diag
    }

    pub fn sub(&self, other: &StateVector) -> StateVector {
        StateVector(std::array::from_fn(|i| self.0[i] - other.0[i]))
    }

    pub fn scale(&self, c: f64) -> StateVector {
        StateVector(self.0.map(|v| v * c))
    }
}

/// Maps a Hermitian matrix to its 16 real parameters.
pub fn vec_density(rho: &DensityMatrix) -> Result<StateVector> {
    let asym = rho.max_asymmetry();
    if asym.is_nan() || asym > HERMITIAN_TOL {
        return Err(Error::NotHermitian { max_asymmetry: asym });
    }
    let m = rho.matrix();
    let mut x = [0.0; VEC_LEN];
    let mut k = 0;
    for n in 0..DIM {
        for j in n..DIM {
            if n == j {
                x[k] = m[(n, n)].re;
                k += 1;
            } else {
                x[k] = m[(n, j)].re;
                x[k + 1] = m[(n, j)].im;
                k += 2;
            }
        }
    }
    Ok(StateVector(x))
}

/// Inverse of [`vec_density`]; Hermitian by construction.
pub fn unvec_density(x: &StateVector) -> DensityMatrix {
    let mut m = Matrix4::zeros();
    let mut k = 0;
    for n in 0..DIM {
        for j in n..DIM {
            if n == j {
                m[(n, n)] = Complex64::new(x.0[k], 0.0);
                k += 1;
            } else {
                let z = Complex64::new(x.0[k], x.0[k + 1]);
                m[(n, j)] = z;
                m[(j, n)] = z.conj();
                k += 2;
            }
        }
    }
    DensityMatrix(m)
}

/// Trace distance `1/2 Tr|rho - sigma|`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let delta = rho.0 - sigma.0;
    0.5 * linalg::hermitian_eigenvalues(&delta)
        .iter()
        .map(|l| l.abs())
        .sum::<f64>()
}

/// Hilbert-Schmidt distance `sqrt(Tr[(rho - sigma)^2])`.
pub fn hs_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    (rho.0 - sigma.0).norm()
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`. Both inputs are
/// clamped to the nearest PSD, unit-trace matrix first.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let rho = rho.clamped()?;
    let sigma = sigma.clamped()?;
    let sqrt_rho = linalg::hermitian_apply(&rho.0, f64::sqrt);
    let mut inner = sqrt_rho * sigma.0 * sqrt_rho;
    // symmetrize away rounding so the eigen solver sees an exactly Hermitian input
    inner = (inner + inner.adjoint()) * Complex64::new(0.5, 0.0);
    let root_trace: f64 = linalg::hermitian_eigenvalues(&inner)
        .iter()
        .map(|l| l.max(0.0).sqrt())
        .sum();
    Ok((root_trace * root_trace).min(1.0))
}

/// Bures disturbance `D_B = 1 - F`. Bounded by the trace distance when
/// either state is pure; mixed pairs can exceed it.
pub fn bures_disturbance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok((1.0 - fidelity(rho, sigma)?).max(0.0))
}
