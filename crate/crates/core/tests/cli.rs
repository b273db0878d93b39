//! Subcommands driven in process, plus exit codes of the binary.

use std::fs;
use std::path::Path;
use std::process::Command;

use clap::Parser;
use tomolens::cli::{run, Cli, Outcome};
use tomolens::fixtures::{default_fixture_dir, load_fixtures};
use tomolens::{CountTable, DensityMatrix, ProtocolName};

fn invoke(args: &[&str]) -> (Outcome, String) {
    let cli = Cli::try_parse_from(std::iter::once("tomolens").chain(args.iter().copied())).unwrap();
    let mut out = Vec::new();
    let outcome = run(cli, &mut out).unwrap();
    (outcome, String::from_utf8(out).unwrap())
}

fn fixture(name: &str) -> String {
    default_fixture_dir().join(name).display().to_string()
}

#[test]
fn protocol_info_formats() {
    let (outcome, text) = invoke(&["protocol", "info", "optimal"]);
    assert_eq!(outcome, Outcome::Success);
    assert!(text.contains("kappa = 1.000000"), "{text}");
    assert!(text.contains("Phi+-Phi-"));

    let (_, json) = invoke(&["protocol", "info", "J", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 16);
    assert!((v["kappa"].as_f64().unwrap() - 60.1f64.sqrt()).abs() < 5e-3);

    let (_, csv) = invoke(&["protocol", "info", "standard36", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 37);
}

#[test]
fn reconstruct_published_vectors() {
    let (outcome, json) = invoke(&[
        "reconstruct",
        "--protocol",
        "optimal",
        "--observations",
        &fixture("b_O.csv"),
        "--variances",
        &fixture("var_O.csv"),
    ]);
    assert_eq!(outcome, Outcome::Success);
    let records: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    assert_eq!(records.len(), 17);
    let fix = load_fixtures(default_fixture_dir()).unwrap();
    let rho7: DensityMatrix =
        serde_json::from_value::<tomolens::qmetrics::DensityMatrixJson>(records[6]["rho"].clone())
            .unwrap()
            .into_matrix()
            .unwrap();
    assert!(rho7.max_abs_diff(fix.matrix(ProtocolName::Optimal, 7)) <= 5e-4);
}

#[test]
fn analyze_reports_radii() {
    let (_, json) = invoke(&[
        "analyze",
        "--protocol",
        "pauli",
        "--observations",
        &fixture("b_P.csv"),
        "--variances",
        &fixture("var_P.csv"),
    ]);
    let reports: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    let r1 = reports[0]["R"].as_f64().unwrap();
    assert!((r1 - 0.2407).abs() <= 5e-3, "{r1}");
    assert!(reports[0]["band_lo"].as_f64().unwrap() < reports[0]["band_hi"].as_f64().unwrap());
}

#[test]
fn raw_counts_through_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.csv");
    let fix = load_fixtures(default_fixture_dir()).unwrap();
    let tables = fix.count_tables_from_standard(ProtocolName::Jkmw).unwrap();
    CountTable::write_csv(&tables, fs::File::create(&path).unwrap()).unwrap();
    let (outcome, json) = invoke(&["reconstruct", "--protocol", "jkmw", "--counts", path.to_str().unwrap()]);
    assert_eq!(outcome, Outcome::Success);
    let records: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    assert_eq!(records.len(), 17);
    assert_eq!(records[16]["state"], "17");
}

#[test]
fn simulate_is_reproducible() {
    let args = [
        "simulate",
        "--state",
        "phi+",
        "--protocol",
        "mub",
        "--trials",
        "25",
        "--seed",
        "9",
    ];
    let (_, a) = invoke(&args);
    let (_, b) = invoke(&args);
    assert_eq!(a, b);
    let last: serde_json::Value = serde_json::from_str(a.lines().last().unwrap()).unwrap();
    assert_eq!(last["summary"]["trials"], 25);
}

fn write_state(dir: &Path, name: &str, rho: &DensityMatrix) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(&rho.to_json()).unwrap()).unwrap();
    path.display().to_string()
}

#[test]
fn compare_and_draw() {
    let dir = tempfile::tempdir().unwrap();
    let fix = load_fixtures(default_fixture_dir()).unwrap();
    let o = write_state(dir.path(), "O.json", fix.matrix(ProtocolName::Optimal, 1));
    let s = write_state(dir.path(), "S.json", fix.matrix(ProtocolName::Standard36, 1));
    let m = write_state(dir.path(), "M.json", fix.matrix(ProtocolName::Mub, 1));

    let (_, same) = invoke(&["compare", "--recon", &o, &o]);
    let v: serde_json::Value = serde_json::from_str(&same).unwrap();
    assert_eq!(v["distances"][0]["trace_distance"].as_f64().unwrap(), 0.0);

    let svg = dir.path().join("disks.svg");
    let (_, json) = invoke(&[
        "compare",
        "--recon",
        &o,
        &s,
        &m,
        "--radii",
        "0.0983,0.2183,0.1475",
        "--svg",
        svg.to_str().unwrap(),
        "--half-disks",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let os = v["distances"][0]["trace_distance"].as_f64().unwrap();
    assert!((os - 0.1004).abs() <= 5e-4);
    let drawing = fs::read_to_string(svg).unwrap();
    assert!(drawing.starts_with("<svg") && drawing.contains("stroke-dasharray"));
}

#[test]
fn validate_committed_fixtures() {
    let (outcome, text) = invoke(&[
        "validate-fixtures",
        "--dir",
        &default_fixture_dir().display().to_string(),
    ]);
    assert_eq!(outcome, Outcome::Success, "{text}");
    assert!(text.contains("PASS optimal coefficient matrix"), "{text}");
    assert!(text.contains(" 0 failed"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_tomolens");
    let ok = Command::new(bin).args(["protocol", "info", "pauli"]).output().unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("kappa = 1.414214"));

    // a corrupted copy of the fixtures fails validation with status 1
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(default_fixture_dir()).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    let r = fs::read_to_string(dir.path().join("R.csv"))
        .unwrap()
        .replacen("0.0983", "0.1983", 1);
    fs::write(dir.path().join("R.csv"), r).unwrap();
    let bad = Command::new(bin)
        .args(["validate-fixtures", "--dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1), "{}", String::from_utf8_lossy(&bad.stdout));

    let missing = Command::new(bin)
        .args(["compare", "--recon", "/nonexistent/a.json", "/nonexistent/b.json"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}
