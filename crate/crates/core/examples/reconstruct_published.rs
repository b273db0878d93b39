// Inverts the published observation vectors of one state for all five
// protocols and compares with the published matrices.
//
//     cargo run --example reconstruct_published [state 1-17]

use std::error::Error;

use tomolens::fixtures::{default_fixture_dir, load_fixtures};
use tomolens::{build_protocol, reconstruct_state, ProtocolName};

pub fn run_example(state: usize) -> Result<f64, Box<dyn Error>> {
    let fix = load_fixtures(default_fixture_dir())?;
    let mut worst: f64 = 0.0;
    for name in ProtocolName::ALL {
        let p = build_protocol(name);
        let rec = reconstruct_state(&p.coefficient_matrix, &fix.observation_vector(name, state))?;
        let err = rec.rho.max_abs_diff(fix.matrix(name, state));
        worst = worst.max(err);
        println!(
            "{name}, state {state}: raw trace {:.0}, residual {:.2}",
            rec.trace_raw(),
            rec.residual_norm
        );
        print!("{}", rec.rho);
        println!(
            "min eigenvalue {:.4}, max deviation from print {err:.1e}\n",
            rec.rho.min_eigenvalue()
        );
    }
    Ok(worst)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let state = std::env::args().nth(1).map_or(Ok(1), |s| s.parse())?;
    run_example(state)?;
    Ok(())
}
