//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any
//! failure outside `KNOWN_FAILURES`.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;
use std::process::ExitCode;
use std::time::Instant;

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{DiscreteCDF, Poisson};
use tomolens::figure::embed_triangle;
use tomolens::fixtures::{default_fixture_dir, load_fixtures, FixtureSet, PRINT_TOL, R_TOL, STATE_COUNT};
use tomolens::noise::{deviation_probability, perturbation_ratio_bounds, poisson_tail_bound, DEFAULT_RESCALE};
use tomolens::protocols::bell;
use tomolens::qmetrics::{fidelity, vec_density};
use tomolens::random::{random_density, random_hermitian};
use tomolens::simulate::{noiseless_reconstruction, run_trials, SimulationConfig};
use tomolens::ProtocolName::{self, *};
use tomolens::{
    build_protocol, bures_disturbance, catalog_states, condition_number, error_radius, hs_distance, reconstruct_state,
    trace_distance, DensityMatrix,
};

/// Criteria that cannot hold as stated; listed in the README.
/// `1 - F <= E` with the squared fidelity fails for some mixed pairs.
const KNOWN_FAILURES: [&str; 1] = ["6c "];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn kappas() -> Outcome {
    let want = [
        (Optimal, 1.0, 1e-9),
        (Pauli, SQRT_2, 1e-9),
        (Mub, 5f64.sqrt(), 1e-9),
        (Standard36, 3.0, 1e-9),
        (Jkmw, 60.1f64.sqrt(), 5e-3),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, k, tol) in want {
        let got = condition_number(&build_protocol(name).coefficient_matrix).unwrap();
        ok &= (got - k).abs() <= tol;
        parts.push(format!("{}={got:.6}", name.tag()));
    }
    outcome(ok, parts.join(" "))
}

fn coefficient_matrices(fix: &FixtureSet) -> Outcome {
    let bad: Vec<_> = ProtocolName::ALL
        .into_iter()
        .filter(|n| build_protocol(*n).coefficient_matrix != fix.coefficient_matrices[n].to_matrix())
        .collect();
    outcome(bad.is_empty(), format!("bit-exact for {} of 5", 5 - bad.len()))
}

type Reconstructed = BTreeMap<(ProtocolName, usize), DensityMatrix>;

fn reconstructions(fix: &FixtureSet, recon: &mut Reconstructed) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut failed = 0;
    for name in ProtocolName::ALL {
        let a = build_protocol(name).coefficient_matrix;
        for n in 1..=STATE_COUNT {
            match reconstruct_state(&a, &fix.observation_vector(name, n)) {
                Ok(rec) => {
                    worst = worst.max(rec.rho.max_abs_diff(fix.matrix(name, n)));
                    recon.insert((name, n), rec.rho);
                }
                Err(_) => failed += 1,
            }
        }
    }
    outcome(
        failed == 0 && worst <= PRINT_TOL,
        format!("{} matrices, max error {worst:.2e}", recon.len()),
    )
}

fn radii(fix: &FixtureSet) -> Outcome {
    let mut worst: f64 = 0.0;
    for name in ProtocolName::ALL {
        let a = build_protocol(name).coefficient_matrix;
        for n in 1..=STATE_COUNT {
            let obs = fix.observation_vector(name, n);
            let r = reconstruct_state(&a, &obs).and_then(|rec| error_radius(&a, &obs, &rec, DEFAULT_RESCALE));
            worst = worst.max(r.map_or(f64::INFINITY, |r| (r - fix.r_value(name, n)).abs()));
        }
    }
    outcome(worst <= R_TOL, format!("85 radii, max |R - R_table| {worst:.2e}"))
}

const PAIRS: [(ProtocolName, ProtocolName); 3] = [(Optimal, Mub), (Optimal, Standard36), (Mub, Standard36)];

fn distances(fix: &FixtureSet, recon: &Reconstructed) -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=STATE_COUNT {
        for (k, (a, b)) in PAIRS.iter().enumerate() {
            let t = match (recon.get(&(*a, n)), recon.get(&(*b, n))) {
                (Some(x), Some(y)) => trace_distance(x, y),
                _ => f64::INFINITY,
            };
            worst = worst.max((t - fix.t_table[n - 1][k]).abs());
        }
    }
    outcome(
        worst <= PRINT_TOL,
        format!("51 distances, max |T - T_table| {worst:.2e}"),
    )
}

fn sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut violations = 0;
    for name in ProtocolName::ALL {
        let a = build_protocol(name).coefficient_matrix;
        for _ in 0..1000 {
            let x = DVector::from_column_slice(vec_density(&random_density(&mut rng)).unwrap().as_slice());
            // perturbations of the data that a state perturbation can produce,
            // so the overdetermined system stays consistent
            let dx = DVector::from_column_slice(vec_density(&random_hermitian(&mut rng)).unwrap().as_slice()) * 0.05;
            let (lo, mid, hi) = perturbation_ratio_bounds(&a, &(&a * x), &(&a * dx)).unwrap();
            if !(lo <= mid * (1.0 + 1e-9) && mid <= hi * (1.0 + 1e-9)) {
                violations += 1;
            }
        }
    }
    outcome(violations == 0, format!("5000 perturbations, {violations} violations"))
}

fn hermitian_pairs() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut violations = 0;
    for _ in 0..1000 {
        let (a, b) = (random_hermitian(&mut rng), random_hermitian(&mut rng));
        let e = trace_distance(&a, &b);
        let dx = vec_density(&a).unwrap().sub(&vec_density(&b).unwrap()).norm();
        if hs_distance(&a, &b) > 2.0 * e + 1e-12 || 2.0 * e > 8f64.sqrt() * dx + 1e-12 {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("1000 pairs, {violations} violations"))
}

fn physical_pairs() -> Outcome {
    // evaluated as stated; 1 - F <= E is only guaranteed when one state is
    // pure, so the root-fidelity form is reported alongside
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut violations, mut root_violations) = (0, 0);
    let mut excess: f64 = 0.0;
    for _ in 0..500 {
        let (a, b) = (random_density(&mut rng), random_density(&mut rng));
        let e = trace_distance(&a, &b);
        let (Ok(d), Ok(f)) = (bures_disturbance(&a, &b), fidelity(&a, &b)) else {
            violations += 1;
            continue;
        };
        if d > e + 1e-9 {
            violations += 1;
            excess = excess.max(d - e);
        }
        root_violations += usize::from(1.0 - f.sqrt() > e + 1e-9);
    }
    outcome(
        violations == 0,
        format!(
            "500 pairs, {violations} violations (max excess {excess:.1e}); 1 - sqrt(F) <= E: {root_violations} violations"
        ),
    )
}

fn coverage() -> Outcome {
    let rho = bell::phi(true).density();
    let config = SimulationConfig::new(5000.0, 1, 500);
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ProtocolName::ALL {
        let run = run_trials(&rho, &build_protocol(name), &config).unwrap();
        ok &= run.summary.coverage >= 0.99;
        parts.push(format!("{}={:.3}", name.tag(), run.summary.coverage));
    }
    outcome(ok, parts.join(" "))
}

fn noiseless() -> Outcome {
    let mut worst: f64 = 0.0;
    for name in ProtocolName::ALL {
        let p = build_protocol(name);
        for ket in catalog_states() {
            let rho = ket.density();
            worst = worst
                .max(noiseless_reconstruction(&p, &rho, 5000.0).map_or(f64::INFINITY, |r| trace_distance(&r, &rho)));
        }
    }
    outcome(worst < 1e-8, format!("85 roundtrips, max E {worst:.1e}"))
}

fn counting() -> Outcome {
    let p20 = deviation_probability(20, 2.0 * SQRT_2);
    let mut ok = p20 >= 0.993;
    let mut parts = vec![format!("P(20)={p20:.4}")];
    for mu in [5.0, 20.0, 100.0] {
        let k = 2.0 * SQRT_2;
        let x = mu + k * f64::sqrt(mu);
        // exact Pr(X > x) from an independent Poisson implementation
        let exact = 1.0 - Poisson::new(mu).unwrap().cdf(x.floor() as u64);
        let bound = poisson_tail_bound(mu, k);
        ok &= bound >= exact;
        parts.push(format!("mu={mu}: {exact:.2e} <= {bound:.2e}"));
    }
    outcome(ok, parts.join(", "))
}

fn embeddings(fix: &FixtureSet) -> Outcome {
    let mut worst: f64 = 0.0;
    for [om, os, ms] in &fix.t_table {
        match embed_triangle(*os, *om, *ms) {
            Ok(e) => {
                for (i, j, d) in [(0, 1, os), (0, 2, om), (1, 2, ms)] {
                    worst = worst.max((e.distance(i, j) - d).abs());
                }
            }
            Err(_) => worst = f64::INFINITY,
        }
    }
    outcome(worst <= 1e-9, format!("17 triangles, max error {worst:.1e}"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let fix = match load_fixtures(default_fixture_dir()) {
        Ok(f) => f,
        Err(e) => {
            println!("FAIL fixtures: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut recon = Reconstructed::new();
    let results = [
        ("1 condition numbers", kappas()),
        ("2 coefficient matrices", coefficient_matrices(&fix)),
        ("3 reconstructions", reconstructions(&fix, &mut recon)),
        ("4 error radii", radii(&fix)),
        ("5 relative trace distances", distances(&fix, &recon)),
        ("6a perturbation sandwich", sandwich()),
        ("6b Hilbert-Schmidt and vector bounds", hermitian_pairs()),
        ("6c Bures below trace distance", physical_pairs()),
        ("6d Monte Carlo coverage", coverage()),
        ("6e noiseless roundtrip", noiseless()),
        ("6f counting statistics", counting()),
        ("7 triangle embedding", embeddings(&fix)),
    ];
    let mut failed = 0;
    let mut unexpected = 0;
    for (name, o) in &results {
        let known = KNOWN_FAILURES.iter().any(|k| name.starts_with(k));
        let note = if known { " (known failure)" } else { "" };
        println!("{} {name}: {}{note}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.passed);
        // a known failure that starts passing also needs attention
        unexpected += usize::from(o.passed == known);
    }
    println!(
        "{} criteria, {failed} failed, {unexpected} unexpected, {:.1}s",
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
