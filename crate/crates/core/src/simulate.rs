//! Synthetic coincidence counts and Monte Carlo coverage of the error radius.

use std::io::Write;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::{error_radius_with, RadiusConvention, DEFAULT_RESCALE};
use crate::protocols::{condition_number, Protocol};
use crate::qmetrics::{trace_distance, unvec_density, DensityMatrix};
use crate::reconstruct::{
    assemble_observations, assemble_values, reconstruct_state, Acquisition, CountTable, Rounding,
};
use crate::DIM;

/// Tolerance on trace and negative eigenvalues when checking a target state.
const PHYSICAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    /// Expected counts for a unit-probability projector over a full window.
    pub flux: f64,
    pub seed: u64,
    pub trials: usize,
    pub rescale: f64,
    pub convention: RadiusConvention,
}

impl SimulationConfig {
    pub fn new(flux: f64, seed: u64, trials: usize) -> Self {
        SimulationConfig {
            flux,
            seed,
            trials,
            rescale: DEFAULT_RESCALE,
            convention: RadiusConvention::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.flux > 0.0 && self.flux.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "flux must be positive, got {}",
                self.flux
            )));
        }
        Ok(())
    }

    /// Independent stream for one trial.
    pub fn trial_rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }
}

fn check_physical(rho: &DensityMatrix) -> Result<()> {
    if !rho.is_hermitian() {
        return Err(Error::NotHermitian {
            max_asymmetry: rho.max_asymmetry(),
        });
    }
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > PHYSICAL_TOL {
        return Err(Error::NonPhysical(format!("trace {tr}")));
    }
    let min = rho.min_eigenvalue();
    if min < -PHYSICAL_TOL {
        return Err(Error::NonPhysical(format!("eigenvalue {min}")));
    }
    Ok(())
}

/// Expected raw counts per term. The window is shared evenly by the terms
/// of a row, so each gets `flux / n * Tr(Pi rho)`.
pub fn ideal_rates(protocol: &Protocol, rho: &DensityMatrix, flux: f64) -> Result<Vec<Vec<f64>>> {
    check_physical(rho)?;
    Ok(protocol
        .rows
        .iter()
        .map(|row| {
            let share = flux / row.terms.len() as f64;
            row.terms
                .iter()
                .map(|t| {
                    let p = rho.expectation(&t.ket.projector()).re;
                    share * p.max(0.0)
                })
                .collect()
        })
        .collect())
}

/// One Poisson variate; zero for a nonpositive mean.
pub fn sample_poisson<R: Rng + ?Sized>(rng: &mut R, mu: f64) -> u64 {
    match Poisson::new(mu) {
        Ok(d) => d.sample(rng) as u64,
        Err(_) => 0,
    }
}

pub fn sample_counts_with<R: Rng + ?Sized>(
    protocol: &Protocol,
    state: &str,
    rates: &[Vec<f64>],
    rng: &mut R,
) -> CountTable {
    let raw = rates
        .iter()
        .map(|row| row.iter().map(|&mu| sample_poisson(rng, mu) as i64).collect())
        .collect();
    CountTable::new(protocol, state, raw, Acquisition::TimeShared)
}

/// Time-shared Poisson counts, deterministic in `seed`.
pub fn sample_counts(protocol: &Protocol, state: &str, rates: &[Vec<f64>], seed: u64) -> CountTable {
    sample_counts_with(protocol, state, rates, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Reconstruction from the exact expected counts, without rounding.
pub fn noiseless_reconstruction(protocol: &Protocol, rho: &DensityMatrix, flux: f64) -> Result<DensityMatrix> {
    let rates = ideal_rates(protocol, rho, flux)?;
    let obs = assemble_values(protocol, &rates, Acquisition::TimeShared, Rounding::Exact)?;
    Ok(reconstruct_state(&protocol.coefficient_matrix, &obs)?.rho)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial: usize,
    #[serde(rename = "E")]
    pub e: Option<f64>,
    #[serde(rename = "R")]
    pub r: Option<f64>,
    pub covered: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Right-hand side of the chained trace-distance bound.
    #[serde(skip)]
    pub chain_bound: Option<f64>,
    /// Trace distance to the truth rescaled to the trial's raw trace.
    #[serde(skip)]
    pub e_scaled: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub covered: usize,
    pub failures: usize,
    pub coverage: f64,
    pub mean_e: f64,
    pub mean_r: f64,
    pub max_e: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialRun {
    pub outcomes: Vec<TrialOutcome>,
    pub summary: TrialSummary,
    /// Per-trial estimates, in trial order (`None` for failed trials).
    pub estimates: Vec<Option<DensityMatrix>>,
}

impl TrialRun {
    /// One JSON object per trial followed by `{"summary": {...}}`.
    pub fn write_json_lines<W: Write>(&self, mut out: W) -> Result<()> {
        for o in &self.outcomes {
            serde_json::to_writer(&mut out, o)?;
            out.write_all(b"\n")?;
        }
        serde_json::to_writer(&mut out, &serde_json::json!({ "summary": self.summary }))?;
        out.write_all(b"\n")?;
        Ok(())
    }
}

fn summarize(outcomes: &[TrialOutcome]) -> TrialSummary {
    let ok: Vec<_> = outcomes.iter().filter_map(|o| o.e.zip(o.r)).collect();
    let n = ok.len().max(1) as f64;
    let covered = outcomes.iter().filter(|o| o.covered).count();
    TrialSummary {
        trials: outcomes.len(),
        covered,
        failures: outcomes.len() - ok.len(),
        coverage: if outcomes.is_empty() {
            0.0
        } else {
            covered as f64 / outcomes.len() as f64
        },
        mean_e: ok.iter().map(|p| p.0).sum::<f64>() / n,
        mean_r: ok.iter().map(|p| p.1).sum::<f64>() / n,
        max_e: ok.iter().map(|p| p.0).fold(0.0, f64::max),
    }
}

/// Simulate, assemble, reconstruct and compute `R` for every trial.
pub fn run_trials(rho: &DensityMatrix, protocol: &Protocol, config: &SimulationConfig) -> Result<TrialRun> {
    config.validate()?;
    let rates = ideal_rates(protocol, rho, config.flux)?;
    let ideal = assemble_values(protocol, &rates, Acquisition::TimeShared, Rounding::Exact)?;
    let kappa = condition_number(&protocol.coefficient_matrix)?;
    let x_ideal = reconstruct_state(&protocol.coefficient_matrix, &ideal)?.x_raw;

    let results: Vec<(TrialOutcome, Option<DensityMatrix>)> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = config.trial_rng(trial);
            let counts = sample_counts_with(protocol, "sim", &rates, &mut rng);
            let attempt = assemble_observations(protocol, &counts).and_then(|obs| {
                let rec = reconstruct_state(&protocol.coefficient_matrix, &obs)?;
                let r = error_radius_with(
                    &protocol.coefficient_matrix,
                    &obs,
                    &rec,
                    config.rescale,
                    config.convention,
                )?;
                Ok((obs, rec, r))
            });
            match attempt {
                Ok((obs, rec, r)) => {
                    let e = trace_distance(rho, &rec.rho);
                    // both raw solutions divided by the noisy trace
                    let e_scaled =
                        trace_distance(&unvec_density(&rec.x_raw), &unvec_density(&x_ideal)) / rec.trace_raw().abs();
                    let db = obs.b_vector() - DVector::from_column_slice(&ideal.b);
                    let chain =
                        (DIM as f64 / 2.0).sqrt() * kappa * db.norm() * rec.x_normalized().norm() / obs.b_norm();
                    (
                        TrialOutcome {
                            trial,
                            e: Some(e),
                            r: Some(r),
                            covered: e <= r,
                            error: None,
                            chain_bound: Some(chain),
                            e_scaled: Some(e_scaled),
                        },
                        Some(rec.rho),
                    )
                }
                Err(err) => (
                    TrialOutcome {
                        trial,
                        e: None,
                        r: None,
                        covered: false,
                        error: Some(err.to_string()),
                        chain_bound: None,
                        e_scaled: None,
                    },
                    None,
                ),
            }
        })
        .collect();
    let (outcomes, estimates): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let summary = summarize(&outcomes);
    Ok(TrialRun {
        outcomes,
        summary,
        estimates,
    })
}
