// Simulated Poisson counts for a Bell state: how often the error radius
// covers the true trace distance.
//
//     cargo run --release --example monte_carlo_coverage [trials] [flux]

use std::error::Error;

use tomolens::protocols::bell;
use tomolens::simulate::{run_trials, SimulationConfig, TrialSummary};
use tomolens::{build_protocol, ProtocolName};

pub fn run_example(trials: usize, flux: f64) -> Result<Vec<(ProtocolName, TrialSummary)>, Box<dyn Error>> {
    let rho = bell::phi(true).density();
    let config = SimulationConfig::new(flux, 1, trials);
    let mut out = Vec::new();
    println!("protocol    coverage  mean E  mean R  max E");
    for name in ProtocolName::ALL {
        let s = run_trials(&rho, &build_protocol(name), &config)?.summary;
        println!(
            "{:<10} {:>9.3} {:>7.4} {:>7.4} {:>6.4}",
            name.as_str(),
            s.coverage,
            s.mean_e,
            s.mean_r,
            s.max_e
        );
        out.push((name, s));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().map_or(Ok(500), |s| s.parse())?;
    let flux = args.next().map_or(Ok(5000.0), |s| s.parse())?;
    run_example(trials, flux)?;
    Ok(())
}
