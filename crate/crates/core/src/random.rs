//! Random matrices for property tests and Monte Carlo examples.

use nalgebra::Matrix4;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::qmetrics::DensityMatrix;

fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R) -> Matrix4<Complex64> {
    Matrix4::from_fn(|_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

/// Hermitian matrix `(G + G^H) / 2` with i.i.d. complex Gaussian `G`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let g = gaussian_matrix(rng);
    let mut h = (g + g.adjoint()) * Complex64::new(0.5, 0.0);
    for i in 0..4 {
        h[(i, i)].im = 0.0;
    }
    DensityMatrix::from_raw(h)
}

/// Physical state `G G^H / Tr(G G^H)` (Wishart-style, full rank almost surely).
pub fn random_density<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let g = gaussian_matrix(rng);
    let w = g * g.adjoint();
    let tr = w.trace().re;
    let mut m = w / Complex64::new(tr, 0.0);
    for i in 0..4 {
        m[(i, i)].im = 0.0;
    }
    // enforce exact conjugate symmetry
    m = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    DensityMatrix::from_raw(m)
}

/// Random pure state `|psi><psi|`.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let mut amps: [Complex64; 4] =
        std::array::from_fn(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    DensityMatrix::pure(&amps)
}
