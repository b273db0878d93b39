// Error radius and probable-error band for every published reconstruction,
// next to the tabulated radius.
//
//     cargo run --example error_radii

use std::error::Error;

use tomolens::fixtures::{default_fixture_dir, load_fixtures, R_COLUMNS, STATE_COUNT};
use tomolens::noise::RadiusOptions;
use tomolens::{build_protocol, reconstruct_state, ErrorReport};

pub fn run_example() -> Result<f64, Box<dyn Error>> {
    let fix = load_fixtures(default_fixture_dir())?;
    let mut worst: f64 = 0.0;
    println!("state  protocol    kappa      R   table   band");
    for n in 1..=STATE_COUNT {
        for name in R_COLUMNS {
            let p = build_protocol(name);
            let obs = fix.observation_vector(name, n);
            let rec = reconstruct_state(&p.coefficient_matrix, &obs)?;
            let rep = ErrorReport::compute(
                name,
                n.to_string(),
                &p.coefficient_matrix,
                &obs,
                &rec,
                RadiusOptions::default(),
            )?;
            let table = fix.r_value(name, n);
            worst = worst.max((rep.r - table).abs());
            println!(
                "{n:>5}  {:<10} {:>6.3} {:>6.4} {table:>7.4}   [{:.4}, {:.4}]",
                name.as_str(),
                rep.kappa,
                rep.r,
                rep.band_lo,
                rep.band_hi
            );
        }
    }
    println!("max |R - table| = {worst:.1e}");
    Ok(worst)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()?;
    Ok(())
}
