//! Uncertainty radius, probable-error band, and Poisson tail quantities.

use std::f64::consts::SQRT_2;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::linalg;
use crate::protocols::{condition_number, ProtocolName};
use crate::reconstruct::{ObservationVector, Reconstruction};
use crate::DIM;

pub const DEFAULT_RESCALE: f64 = 1.3;
pub const DEFAULT_K: f64 = SQRT_2;
/// Largest admissible band parameter `k`.
pub const MAX_K: f64 = 2.0 * SQRT_2;

/// Prefactor multiplying `kappa ||sigma|| ||x|| / ||b||`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusConvention {
    /// `2 sqrt(d)`, the prefactor of the derived bound.
    Bound,
    /// `sqrt(2d)`, which reproduces the published radius table.
    #[default]
    Tabulated,
}

impl RadiusConvention {
    pub fn prefactor(self, d: usize) -> f64 {
        let d = d as f64;
        match self {
            RadiusConvention::Bound => 2.0 * d.sqrt(),
            RadiusConvention::Tabulated => (2.0 * d).sqrt(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusOptions {
    pub rescale: f64,
    pub k: f64,
    pub convention: RadiusConvention,
}

impl Default for RadiusOptions {
    fn default() -> Self {
        RadiusOptions {
            rescale: DEFAULT_RESCALE,
            k: DEFAULT_K,
            convention: RadiusConvention::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub protocol: ProtocolName,
    pub state: String,
    pub kappa: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub band_lo: f64,
    pub band_hi: f64,
    pub k_param: f64,
    pub sigma_norm: f64,
    pub b_norm: f64,
    pub x_norm: f64,
    pub rescale_factor: f64,
    pub convention: RadiusConvention,
}

impl ErrorReport {
    pub fn compute(
        protocol: ProtocolName,
        state: impl Into<String>,
        a: &DMatrix<f64>,
        obs: &ObservationVector,
        recon: &Reconstruction,
        opts: RadiusOptions,
    ) -> Result<Self> {
        let kappa = condition_number(a)?;
        let r = radius_from_parts(kappa, obs, recon, opts.rescale, opts.convention)?;
        let (band_lo, band_hi) = error_band(r, kappa, DIM, opts.k)?;
        Ok(ErrorReport {
            protocol,
            state: state.into(),
            kappa,
            r,
            band_lo,
            band_hi,
            k_param: opts.k,
            sigma_norm: obs.sigma_norm(),
            b_norm: obs.b_norm(),
            x_norm: recon.x_normalized().norm(),
            rescale_factor: opts.rescale,
            convention: opts.convention,
        })
    }
}

/// `R = rescale * c * kappa * ||sigma(b)|| * ||x|| / ||b||` with the tabulated
/// prefactor `c = sqrt(2d)` and `x` the trace-normalized estimate.
pub fn error_radius(a: &DMatrix<f64>, obs: &ObservationVector, recon: &Reconstruction, rescale: f64) -> Result<f64> {
    error_radius_with(a, obs, recon, rescale, RadiusConvention::default())
}

pub fn error_radius_with(
    a: &DMatrix<f64>,
    obs: &ObservationVector,
    recon: &Reconstruction,
    rescale: f64,
    convention: RadiusConvention,
) -> Result<f64> {
    radius_from_parts(condition_number(a)?, obs, recon, rescale, convention)
}

fn radius_from_parts(
    kappa: f64,
    obs: &ObservationVector,
    recon: &Reconstruction,
    rescale: f64,
    convention: RadiusConvention,
) -> Result<f64> {
    if !(rescale >= 0.0 && rescale.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "rescale factor {rescale} must be finite and >= 0"
        )));
    }
    if obs.variance.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidArgument(
            "variances must be finite and nonnegative".into(),
        ));
    }
    let b_norm = obs.b_norm();
    if b_norm == 0.0 {
        return Err(Error::InvalidArgument("observation vector has zero norm".into()));
    }
    let x_norm = recon.x_normalized().norm();
    Ok(rescale * convention.prefactor(DIM) * kappa * obs.sigma_norm() * x_norm / b_norm)
}

/// Probable-error band `[kR / (4 sqrt(d) kappa^2), kR / (2 sqrt2)]`.
pub fn error_band(r: f64, kappa: f64, d: usize, k: f64) -> Result<(f64, f64)> {
    if !(0.0..=MAX_K + 1e-12).contains(&k) {
        return Err(Error::InvalidArgument(format!("k = {k} outside [0, 2 sqrt2]")));
    }
    if r < 0.0 || kappa < 1.0 || d == 0 {
        return Err(Error::InvalidArgument(format!(
            "need R >= 0, kappa >= 1, d > 0 (got {r}, {kappa}, {d})"
        )));
    }
    let lo = k * r / (4.0 * (d as f64).sqrt() * kappa * kappa);
    let hi = k * r / (2.0 * SQRT_2);
    Ok((lo, hi))
}

fn ln_poisson_pmf(mu: f64, n: u64) -> f64 {
    if mu == 0.0 {
        return if n == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    n as f64 * mu.ln() - mu - ln_gamma(n as f64 + 1.0)
}

/// Poisson(mu) mass on the integers `lo..=hi`.
pub fn poisson_mass(mu: f64, lo: u64, hi: u64) -> f64 {
    (lo..=hi).map(|n| ln_poisson_pmf(mu, n).exp()).sum::<f64>().min(1.0)
}

/// Probability that a Poisson(b) count lands within
/// `[floor(b - m sqrt b), floor(b + m sqrt b)]`, both ends included.
pub fn deviation_probability(b: u64, multiple: f64) -> f64 {
    let mu = b as f64;
    let spread = multiple * mu.sqrt();
    let hi = (mu + spread).floor().max(0.0) as u64;
    let lo = (mu - spread).floor().max(0.0) as u64;
    poisson_mass(mu, lo, hi)
}

/// Chernoff bound `e^-mu (e mu / x)^x` on `Pr(X > x)` at `x = mu + k sqrt(mu)`.
pub fn poisson_tail_bound(mu: f64, k: f64) -> f64 {
    let x = mu + k * mu.sqrt();
    (-mu + x * (1.0 + mu.ln() - x.ln())).exp()
}

/// `(1/kappa ||db||/||b||, ||dx||/||x||, kappa ||db||/||b||)`.
pub fn perturbation_ratio_bounds(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    delta_b: &DVector<f64>,
) -> Result<(f64, f64, f64)> {
    let kappa = condition_number(a)?;
    let x = linalg::solve(a, b)?;
    let dx = linalg::solve(a, delta_b)?;
    let (b_norm, x_norm) = (b.norm(), x.norm());
    if b_norm == 0.0 || x_norm == 0.0 {
        return Err(Error::InvalidArgument("b and x must be nonzero".into()));
    }
    let rel = delta_b.norm() / b_norm;
    Ok((rel / kappa, dx.norm() / x_norm, kappa * rel))
}
