// Checks the committed fixtures: checksums, internal consistency, and the
// reproduction of every published table.
//
//     cargo run --example fixture_validation

use std::error::Error;

use tomolens::fixtures::{
    default_fixture_dir, load_fixtures, reproduce_published_tables, validate_fixtures, verify_manifest,
    ValidationReport,
};

pub fn run_example() -> Result<ValidationReport, Box<dyn Error>> {
    let dir = default_fixture_dir();
    let bad = verify_manifest(&dir)?;
    println!("manifest: {} mismatched files", bad.len());
    let fix = load_fixtures(&dir)?;
    let mut report = validate_fixtures(&fix);
    report.extend(reproduce_published_tables(&fix));
    for c in report.failures().chain(report.warnings()) {
        println!("{:?} {}: {}", c.severity, c.name, c.detail);
    }
    println!(
        "{} checks, {} failed, {} warnings",
        report.checks.len(),
        report.failures().count(),
        report.warnings().count()
    );
    Ok(report)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()?;
    Ok(())
}
