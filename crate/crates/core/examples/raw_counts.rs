// Raw coincidence counts through CSV and back, assembled under different
// rounding rules.
//
// The separable protocols can be rebuilt from the 36 published product
// counts. The Pauli vectors were formed by rounding each four-term sum
// divided by four half away from zero; floor rounding disagrees on about a
// third of the entries.
//
//     cargo run --example raw_counts [out.csv]

use std::error::Error;
use std::fs::File;

use tomolens::fixtures::{default_fixture_dir, load_fixtures};
use tomolens::reconstruct::{assemble_observations_with, reconstruct_all, Rounding};
use tomolens::{build_protocol, CountTable, ProtocolName};

pub fn run_example(path: &std::path::Path) -> Result<usize, Box<dyn Error>> {
    let fix = load_fixtures(default_fixture_dir())?;
    let pauli = build_protocol(ProtocolName::Pauli);
    CountTable::write_csv(
        &fix.count_tables_from_standard(ProtocolName::Pauli)?,
        File::create(path)?,
    )?;
    let tables = CountTable::read_csv(File::open(path)?)?;
    println!("wrote and reread {} count tables at {}", tables.len(), path.display());

    for rounding in [Rounding::Floor, Rounding::HalfAwayFromZero] {
        let mut mismatches = 0;
        for t in &tables {
            let n: usize = t.state.parse()?;
            let b = assemble_observations_with(&pauli, t, rounding)?.b;
            let published = fix.observation_column(ProtocolName::Pauli, n);
            mismatches += b.iter().zip(&published).filter(|(x, y)| **x != **y as f64).count();
        }
        println!(
            "{rounding:?}: {mismatches} of {} entries differ from the published vectors",
            tables.len() * pauli.len()
        );
    }

    let failed = reconstruct_all(&pauli, &tables, Rounding::HalfAwayFromZero)
        .iter()
        .filter(|item| item.result.is_err())
        .count();
    println!("batch reconstruction: {} states, {failed} failed", tables.len());
    Ok(failed)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let path = std::env::args()
        .nth(1)
        .map_or_else(|| std::env::temp_dir().join("tomolens_counts_P.csv"), Into::into);
    run_example(&path)?;
    Ok(())
}
