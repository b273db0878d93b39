// Places the optimal, standard and MUB reconstructions of one state in the
// plane by their mutual trace distances and draws their error disks.
//
//     cargo run --example error_disks [state 1-17] [out.svg]

use std::error::Error;
use std::path::{Path, PathBuf};

use tomolens::figure::{embed_triangle, render_svg, TriangleEmbedding};
use tomolens::fixtures::{default_fixture_dir, load_fixtures};
use tomolens::ProtocolName::{Mub, Optimal, Standard36};
use tomolens::{build_protocol, error_radius, reconstruct_state, trace_distance};

pub fn run_example(state: usize, svg: &Path) -> Result<TriangleEmbedding, Box<dyn Error>> {
    let fix = load_fixtures(default_fixture_dir())?;
    let mut rho = Vec::new();
    let mut radii = Vec::new();
    for name in [Optimal, Standard36, Mub] {
        let p = build_protocol(name);
        let obs = fix.observation_vector(name, state);
        let rec = reconstruct_state(&p.coefficient_matrix, &obs)?;
        radii.push(error_radius(&p.coefficient_matrix, &obs, &rec, 1.3)?);
        rho.push(rec.rho);
    }
    let d = |i: usize, j: usize| trace_distance(&rho[i], &rho[j]);
    let emb = embed_triangle(d(0, 1), d(0, 2), d(1, 2))?.with_radii([radii[0], radii[1], radii[2]]);
    for (i, label) in emb.labels.iter().enumerate() {
        let [x, y] = emb.points[i];
        println!("{label}: ({x:.4}, {y:.4}), R = {:.4}", emb.radii[i]);
    }
    // every pair of disks overlaps when the radii are honest
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        println!(
            "{}-{}: distance {:.4}, R sum {:.4}",
            emb.labels[i],
            emb.labels[j],
            emb.distance(i, j),
            emb.radii[i] + emb.radii[j]
        );
    }
    std::fs::write(svg, render_svg(&emb, true))?;
    println!("wrote {}", svg.display());
    Ok(emb)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let mut args = std::env::args().skip(1);
    let state = args.next().map_or(Ok(1), |s| s.parse())?;
    let svg: PathBuf = args.next().map_or_else(
        || std::env::temp_dir().join(format!("tomolens_disks_{state}.svg")),
        Into::into,
    );
    run_example(state, &svg)?;
    Ok(())
}
