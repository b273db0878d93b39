//! Command-line front end. `run` writes to any sink so it can be driven
//! in-process from tests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::figure::{embed_triangle, render_svg};
use crate::fixtures::{
    load_fixtures, reproduce_published_tables, validate_fixtures, verify_manifest, ValidationReport,
};
use crate::noise::{ErrorReport, RadiusConvention, RadiusOptions, DEFAULT_K, DEFAULT_RESCALE};
use crate::protocols::{bell, build_protocol, catalog_states, ProtocolName, TwoQubitKet, CATALOG_LABELS};
use crate::qmetrics::{trace_distance, DensityMatrix, DensityMatrixJson};
use crate::reconstruct::{
    assemble_observations_with, reconstruct_state, Acquisition, CountTable, ObservationVector, Reconstruction, Rounding,
};
use crate::simulate::{run_trials, SimulationConfig};

#[derive(Debug, Parser)]
#[command(name = "tomolens", version, about = "Two-qubit linear-inversion tomography")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Protocol definitions.
    Protocol {
        #[command(subcommand)]
        action: ProtocolAction,
    },
    /// Assemble observations and invert them.
    Reconstruct(ReconstructArgs),
    /// Error reports (kappa, R, probable-error band) per state.
    Analyze(AnalyzeArgs),
    /// Monte Carlo coverage of the error radius.
    Simulate(SimulateArgs),
    /// Pairwise trace distances, optionally drawn as error disks.
    Compare(CompareArgs),
    /// Reproduce every published table from the fixture data.
    ValidateFixtures {
        #[arg(long, env = "TOMOLENS_FIXTURES", default_value_os_t = crate::fixtures::default_fixture_dir())]
        dir: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum ProtocolAction {
    /// Rows, coefficient matrix and condition number.
    Info {
        name: ProtocolName,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RoundingArg {
    Floor,
    TowardZero,
    HalfAwayFromZero,
    Exact,
}

impl From<RoundingArg> for Rounding {
    fn from(r: RoundingArg) -> Self {
        match r {
            RoundingArg::Floor => Rounding::Floor,
            RoundingArg::TowardZero => Rounding::TowardZero,
            RoundingArg::HalfAwayFromZero => Rounding::HalfAwayFromZero,
            RoundingArg::Exact => Rounding::Exact,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AcquisitionArg {
    FullWindow,
    TimeShared,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConventionArg {
    Tabulated,
    Bound,
}

impl From<ConventionArg> for RadiusConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Tabulated => RadiusConvention::Tabulated,
            ConventionArg::Bound => RadiusConvention::Bound,
        }
    }
}

#[derive(Debug, Args)]
pub struct DataArgs {
    #[arg(long)]
    pub protocol: ProtocolName,
    /// Raw counts: protocol,state,row_index,row_label,c1[,c2[,c3,c4]].
    #[arg(long, conflicts_with = "observations", required_unless_present = "observations")]
    pub counts: Option<PathBuf>,
    /// Assembled observation vectors, one column per state.
    #[arg(long)]
    pub observations: Option<PathBuf>,
    /// Variances matching --observations (default: |b|).
    #[arg(long, requires = "observations")]
    pub variances: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = RoundingArg::Floor)]
    pub rounding: RoundingArg,
    #[arg(long, value_enum, default_value_t = AcquisitionArg::FullWindow)]
    pub acquisition: AcquisitionArg,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Also write the JSON result here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, default_value_t = DEFAULT_RESCALE)]
    pub rescale: f64,
    #[arg(long, default_value_t = DEFAULT_K)]
    pub k: f64,
    #[arg(long, value_enum, default_value_t = ConventionArg::Tabulated)]
    pub convention: ConventionArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Catalog index 1-17, a Bell label (phi+, psi-, ...), a product label
    /// such as HV, or a density-matrix JSON file.
    #[arg(long)]
    pub state: String,
    #[arg(long)]
    pub protocol: ProtocolName,
    #[arg(long, default_value_t = 5000.0)]
    pub flux: f64,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_RESCALE)]
    pub rescale: f64,
    #[arg(long, value_enum, default_value_t = ConventionArg::Tabulated)]
    pub convention: ConventionArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, num_args = 2.., required = true)]
    pub recon: Vec<PathBuf>,
    /// Error radii for the first three inputs, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    /// Where to write the error-disk SVG (needs exactly three inputs and --radii).
    #[arg(long, requires = "radii")]
    pub svg: Option<PathBuf>,
    /// Also draw dashed disks of radius R/2.
    #[arg(long)]
    pub half_disks: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Exit status of a completed command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    ValidationFailed,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome> {
    match cli.command {
        Command::Protocol {
            action: ProtocolAction::Info { name, format },
        } => protocol_info(name, format, out),
        Command::Reconstruct(args) => reconstruct_cmd(args, out),
        Command::Analyze(args) => analyze_cmd(args, out),
        Command::Simulate(args) => simulate_cmd(args, out),
        Command::Compare(args) => compare_cmd(args, out),
        Command::ValidateFixtures { dir } => validate_cmd(&dir, out),
    }
}

fn write_json<T: Serialize + ?Sized>(value: &T, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn protocol_info(name: ProtocolName, format: Format, out: &mut dyn Write) -> Result<Outcome> {
    let p = build_protocol(name);
    let kappa = p.kappa();
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(p.to_json())?;
            v["kappa"] = kappa.into();
            write_json(&v, out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let mut header = vec!["row".to_string(), "label".into(), "assembly".into()];
            header.extend((1..=crate::VEC_LEN).map(|k| format!("x{k}")));
            w.write_record(&header)?;
            for (r, row) in p.rows.iter().enumerate() {
                let mut rec = vec![(r + 1).to_string(), row.label.clone(), format!("{:?}", row.assembly)];
                rec.extend(p.coefficient_matrix.row(r).iter().map(|v| v.to_string()));
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "protocol {name}: {} rows", p.len())?;
            writeln!(out, "kappa = {kappa:.6}")?;
            for (r, row) in p.rows.iter().enumerate() {
                let coeffs: Vec<String> = p.coefficient_matrix.row(r).iter().map(|v| format!("{v:5}")).collect();
                writeln!(out, "{:>3} {:<22} [{}]", r + 1, row.label, coeffs.join(" "))?;
            }
        }
    }
    Ok(Outcome::Success)
}

/// Per-state observation vectors from either input flavour.
fn load_observations(data: &DataArgs) -> Result<Vec<(String, Result<ObservationVector>)>> {
    let protocol = build_protocol(data.protocol);
    if let Some(path) = &data.counts {
        let file = fs::File::open(path).map_err(|e| Error::fixture(path, e.to_string()))?;
        let mut tables = CountTable::read_csv(file)?;
        let acquisition = match data.acquisition {
            AcquisitionArg::FullWindow => Acquisition::FullWindow,
            AcquisitionArg::TimeShared => Acquisition::TimeShared,
        };
        tables.retain(|t| t.protocol == data.protocol);
        return Ok(tables
            .into_iter()
            .map(|mut t| {
                t.acquisition = acquisition;
                let obs = assemble_observations_with(&protocol, &t, data.rounding.into());
                (t.state, obs)
            })
            .collect());
    }
    let path = data.observations.as_ref().expect("clap enforces one input");
    let b = read_grid(path)?;
    let var = data.variances.as_ref().map(|p| read_grid(p)).transpose()?;
    let states = b.first().map_or(0, Vec::len);
    Ok((0..states)
        .map(|s| {
            let col: Vec<f64> = b.iter().map(|row| row[s]).collect();
            let obs = match &var {
                Some(v) => ObservationVector::new(col, v.iter().map(|row| row[s]).collect()),
                None => ObservationVector::poisson(col),
            };
            ((s + 1).to_string(), obs)
        })
        .collect())
}

fn read_grid(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).map_err(|e| Error::fixture(path, e.to_string()))?;
    let rows = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, line)| {
            line.split(',')
                .map(|f| {
                    f.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::fixture(path, format!("line {}: cannot parse {f:?}", i + 1)))
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(w) = rows.first().map(Vec::len) {
        if let Some(i) = rows.iter().position(|r| r.len() != w) {
            return Err(Error::fixture(
                path,
                format!("row {} has {} columns, expected {w}", i + 1, rows[i].len()),
            ));
        }
    }
    Ok(rows)
}

#[derive(Serialize)]
struct ReconstructionRecord {
    state: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<DensityMatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace_raw: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

type Solved = Result<(ObservationVector, Reconstruction)>;

fn reconstructions(data: &DataArgs) -> Result<Vec<(String, Solved)>> {
    let protocol = build_protocol(data.protocol);
    Ok(load_observations(data)?
        .into_iter()
        .map(|(state, obs)| {
            let r = obs.and_then(|o| reconstruct_state(&protocol.coefficient_matrix, &o).map(|r| (o, r)));
            (state, r)
        })
        .collect())
}

fn reconstruct_cmd(args: ReconstructArgs, out: &mut dyn Write) -> Result<Outcome> {
    let results = reconstructions(&args.data)?;
    let records: Vec<ReconstructionRecord> = results
        .iter()
        .map(|(state, r)| match r {
            Ok((_, rec)) => ReconstructionRecord {
                state: state.clone(),
                rho: Some(rec.rho.to_json()),
                trace_raw: Some(rec.trace_raw()),
                residual_norm: Some(rec.residual_norm),
                error: None,
            },
            Err(e) => ReconstructionRecord {
                state: state.clone(),
                rho: None,
                trace_raw: None,
                residual_norm: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    if let Some(path) = &args.out {
        let mut f = fs::File::create(path)?;
        write_json(&records, &mut f)?;
    }
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["state", "row", "col", "re", "im"])?;
            for rec in &records {
                if let Some(rho) = &rec.rho {
                    for (i, row) in rho.entries.iter().enumerate() {
                        for (j, [re, im]) in row.iter().enumerate() {
                            w.write_record([
                                rec.state.clone(),
                                (i + 1).to_string(),
                                (j + 1).to_string(),
                                re.to_string(),
                                im.to_string(),
                            ])?;
                        }
                    }
                }
            }
            w.flush()?;
        }
        _ => write_json(&records, out)?,
    }
    Ok(if records.iter().all(|r| r.error.is_none()) {
        Outcome::Success
    } else {
        Outcome::ValidationFailed
    })
}

fn analyze_cmd(args: AnalyzeArgs, out: &mut dyn Write) -> Result<Outcome> {
    let protocol = build_protocol(args.data.protocol);
    let opts = RadiusOptions {
        rescale: args.rescale,
        k: args.k,
        convention: args.convention.into(),
    };
    let mut reports = Vec::new();
    for (state, r) in reconstructions(&args.data)? {
        let (obs, rec) = r?;
        reports.push(ErrorReport::compute(
            protocol.name,
            state,
            &protocol.coefficient_matrix,
            &obs,
            &rec,
            opts,
        )?);
    }
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in &reports {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        _ => write_json(&reports, out)?,
    }
    Ok(Outcome::Success)
}

/// Resolves a `--state` argument to a density matrix.
pub fn parse_state(spec: &str) -> Result<(String, DensityMatrix)> {
    if let Ok(n) = spec.parse::<usize>() {
        if (1..=CATALOG_LABELS.len()).contains(&n) {
            return Ok((CATALOG_LABELS[n - 1].to_string(), catalog_states()[n - 1].density()));
        }
        return Err(Error::InvalidArgument(format!("catalog index {n} outside 1..=17")));
    }
    let ket = match spec.to_ascii_lowercase().as_str() {
        "phi+" => Some(bell::phi(true)),
        "phi-" => Some(bell::phi(false)),
        "psi+" => Some(bell::psi(true)),
        "psi-" => Some(bell::psi(false)),
        _ => None,
    };
    if let Some(k) = ket {
        return Ok((spec.to_string(), k.density()));
    }
    if spec.len() == 2 {
        if let Ok(k) = TwoQubitKet::from_labels(spec) {
            return Ok((spec.to_uppercase(), k.density()));
        }
    }
    let path = Path::new(spec);
    if path.exists() {
        return Ok((spec.to_string(), DensityMatrix::read_json(path)?));
    }
    Err(Error::InvalidArgument(format!("unrecognized state {spec:?}")))
}

fn simulate_cmd(args: SimulateArgs, out: &mut dyn Write) -> Result<Outcome> {
    let (_, rho) = parse_state(&args.state)?;
    let protocol = build_protocol(args.protocol);
    let config = SimulationConfig {
        flux: args.flux,
        seed: args.seed,
        trials: args.trials,
        rescale: args.rescale,
        convention: args.convention.into(),
    };
    let run = run_trials(&rho, &protocol, &config)?;
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["trial", "E", "R", "covered"])?;
            for o in &run.outcomes {
                let f = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
                w.write_record([o.trial.to_string(), f(o.e), f(o.r), o.covered.to_string()])?;
            }
            w.flush()?;
        }
        _ => run.write_json_lines(&mut *out)?,
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct PairDistance {
    a: String,
    b: String,
    trace_distance: f64,
}

fn compare_cmd(args: CompareArgs, out: &mut dyn Write) -> Result<Outcome> {
    let names: Vec<String> = args.recon.iter().map(|p| p.display().to_string()).collect();
    let states = args
        .recon
        .iter()
        .map(DensityMatrix::read_json)
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            pairs.push(PairDistance {
                a: names[i].clone(),
                b: names[j].clone(),
                trace_distance: trace_distance(&states[i], &states[j]),
            });
        }
    }
    let mut embedding = None;
    if let Some(radii) = &args.radii {
        if states.len() != 3 || radii.len() != 3 {
            return Err(Error::InvalidArgument(
                "--radii needs three values and three reconstructions".into(),
            ));
        }
        let d = |i: usize, j: usize| trace_distance(&states[i], &states[j]);
        let labels: Vec<String> = args
            .recon
            .iter()
            .map(|p| {
                p.file_stem()
                    .map_or_else(|| "?".into(), |s| s.to_string_lossy().into_owned())
            })
            .collect();
        let emb = embed_triangle(d(0, 1), d(0, 2), d(1, 2))?
            .with_labels([&labels[0], &labels[1], &labels[2]])
            .with_radii([radii[0], radii[1], radii[2]]);
        if let Some(path) = &args.svg {
            fs::write(path, render_svg(&emb, args.half_disks))?;
        }
        embedding = Some(emb);
    }
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for p in &pairs {
                w.serialize(p)?;
            }
            w.flush()?;
        }
        _ => write_json(&serde_json::json!({ "distances": pairs, "embedding": embedding }), out)?,
    }
    Ok(Outcome::Success)
}

fn validate_cmd(dir: &Path, out: &mut dyn Write) -> Result<Outcome> {
    let mut report = ValidationReport::default();
    let bad = verify_manifest(dir)?;
    let detail = if bad.is_empty() {
        "all files match".to_string()
    } else {
        format!("mismatched: {}", bad.join(", "))
    };
    report.push("manifest checksums", bad.is_empty(), detail);
    let fix = load_fixtures(dir)?;
    report.extend(validate_fixtures(&fix));
    let golden = reproduce_published_tables(&fix);
    for c in &golden.checks {
        writeln!(
            out,
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        )?;
    }
    report.extend(golden);
    let failures: Vec<_> = report.failures().collect();
    let warnings: Vec<_> = report.warnings().collect();
    writeln!(
        out,
        "{} checks: {} failed, {} warnings",
        report.checks.len(),
        failures.len(),
        warnings.len()
    )?;
    for c in &failures {
        writeln!(out, "FAIL {}: {}", c.name, c.detail)?;
    }
    for c in &warnings {
        writeln!(out, "WARN {}: {}", c.name, c.detail)?;
    }
    Ok(if report.passed() {
        Outcome::Success
    } else {
        Outcome::ValidationFailed
    })
}
