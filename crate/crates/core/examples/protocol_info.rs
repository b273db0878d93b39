// Builds every protocol and prints its rows, coefficient matrix and
// condition number.
//
//     cargo run --example protocol_info [name]

use std::error::Error;

use tomolens::{build_protocol, ProtocolName};

pub fn run_example(only: Option<ProtocolName>) -> Result<Vec<(ProtocolName, f64)>, Box<dyn Error>> {
    let mut kappas = Vec::new();
    for name in ProtocolName::ALL.into_iter().filter(|n| only.is_none_or(|o| o == *n)) {
        let p = build_protocol(name);
        println!("{name} ({}): {} rows, kappa = {:.4}", name.tag(), p.len(), p.kappa());
        for (r, row) in p.rows.iter().enumerate() {
            let coeffs: Vec<String> = p.coefficient_matrix.row(r).iter().map(|v| format!("{v:6.3}")).collect();
            println!(
                "  {:>2} {:<20} {:?} [{}]",
                r + 1,
                row.label,
                row.assembly,
                coeffs.join("")
            );
        }
        kappas.push((name, p.kappa()));
    }
    Ok(kappas)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let only = std::env::args().nth(1).map(|s| s.parse()).transpose()?;
    run_example(only)?;
    Ok(())
}
