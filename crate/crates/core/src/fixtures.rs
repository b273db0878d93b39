//! Loader and checks for the transcribed published data set.
//!
//! Layout of a fixture directory:
//!
//! - `A_{O,M,S,P,J}.csv`: `# prefactor=p/q` then one integer row per measurement
//! - `b_{O,M,S,P,J}.csv`: rows x 17 signed integers, one column per state
//! - `var_{O,P}.csv`: variance tables, rows x 17
//! - `R.csv`, `T.csv`: radius and relative trace-distance tables with headers
//! - `rho_{tag}_{n}.json`: printed density matrices
//! - `states.json`: the 17 target kets
//! - `MANIFEST.sha256`: `<sha256>  <file>` for every file above

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::noise::{error_radius, DEFAULT_RESCALE};
use crate::protocols::{build_protocol, catalog_states, ProtocolName, TwoQubitKet};
use crate::qmetrics::{trace_distance, DensityMatrix};
use crate::reconstruct::{reconstruct_state, Acquisition, CountTable, ObservationVector};

pub const STATE_COUNT: usize = 17;
/// Column order of the radius table.
pub const R_COLUMNS: [ProtocolName; 5] = [
    ProtocolName::Optimal,
    ProtocolName::Mub,
    ProtocolName::Standard36,
    ProtocolName::Pauli,
    ProtocolName::Jkmw,
];
/// Print precision of the reconstructed matrices.
pub const PRINT_TOL: f64 = 5e-4;
/// Absolute tolerance on the radius table.
pub const R_TOL: f64 = 5e-3;

/// `TOMOLENS_FIXTURES` if set, otherwise the repository's `fixtures/`.
pub fn default_fixture_dir() -> PathBuf {
    std::env::var_os("TOMOLENS_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
}

/// Integer matrix with a rational prefactor, as printed.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledIntMatrix {
    pub numerator: i64,
    pub denominator: i64,
    pub entries: Vec<Vec<i64>>,
}

impl ScaledIntMatrix {
    pub fn prefactor(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        let cols = self.entries.first().map_or(0, Vec::len);
        DMatrix::from_fn(self.entries.len(), cols, |r, c| {
            self.entries[r][c] as f64 * self.prefactor()
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateRecord {
    pub index: usize,
    pub label: String,
    pub amplitudes: [[f64; 2]; 4],
}

impl StateRecord {
    pub fn ket(&self) -> TwoQubitKet {
        TwoQubitKet(self.amplitudes.map(|[re, im]| Complex64::new(re, im)))
    }
}

#[derive(Clone, Debug)]
pub struct FixtureSet {
    pub dir: PathBuf,
    pub coefficient_matrices: BTreeMap<ProtocolName, ScaledIntMatrix>,
    /// Rows x states.
    pub observations: BTreeMap<ProtocolName, Vec<Vec<i64>>>,
    pub variance_tables: BTreeMap<ProtocolName, Vec<Vec<f64>>>,
    pub r_table: Vec<[f64; 5]>,
    pub t_table: Vec<[f64; 3]>,
    pub reconstructed: BTreeMap<(ProtocolName, usize), DensityMatrix>,
    pub states: Vec<StateRecord>,
}

impl FixtureSet {
    /// Observation column for a 1-based state index.
    pub fn observation_column(&self, name: ProtocolName, state: usize) -> Vec<i64> {
        self.observations[&name].iter().map(|row| row[state - 1]).collect()
    }

    /// Observation vector with the published variances where they exist and
    /// the Poisson estimate `|b|` elsewhere.
    pub fn observation_vector(&self, name: ProtocolName, state: usize) -> ObservationVector {
        let b: Vec<f64> = self.observation_column(name, state).iter().map(|&v| v as f64).collect();
        match self.variance_tables.get(&name) {
            Some(var) => ObservationVector::new(b, var.iter().map(|row| row[state - 1]).collect())
                .expect("dimensions checked at load"),
            None => ObservationVector::poisson(b).expect("finite"),
        }
    }

    pub fn matrix(&self, name: ProtocolName, state: usize) -> &DensityMatrix {
        &self.reconstructed[&(name, state)]
    }

    pub fn r_value(&self, name: ProtocolName, state: usize) -> f64 {
        let col = R_COLUMNS
            .iter()
            .position(|&p| p == name)
            .expect("all protocols tabulated");
        self.r_table[state - 1][col]
    }

    /// Single-term count tables rebuilt from the Standard36 columns for every
    /// protocol whose projectors are all separable.
    pub fn count_tables_from_standard(&self, name: ProtocolName) -> Result<Vec<CountTable>> {
        let standard = build_protocol(ProtocolName::Standard36);
        let target = build_protocol(name);
        let lookup: BTreeMap<&str, usize> = standard
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.label.as_str(), i))
            .collect();
        let mut index_rows = Vec::with_capacity(target.len());
        for row in &target.rows {
            let idx = row
                .terms
                .iter()
                .map(|t| {
                    lookup.get(t.label.as_str()).copied().ok_or_else(|| {
                        Error::InvalidArgument(format!("{name} term {} is not a Standard36 projector", t.label))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            index_rows.push(idx);
        }
        let s = &self.observations[&ProtocolName::Standard36];
        Ok((1..=STATE_COUNT)
            .map(|state| {
                let raw = index_rows
                    .iter()
                    .map(|idx| idx.iter().map(|&i| s[i][state - 1]).collect())
                    .collect();
                CountTable::new(&target, state.to_string(), raw, Acquisition::FullWindow)
            })
            .collect())
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::fixture(path, e.to_string()))
}

fn parse_grid<T: std::str::FromStr>(path: &Path, text: &str, first_line: usize) -> Result<Vec<Vec<T>>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .enumerate()
            .map(|(j, field)| {
                field.trim().parse::<T>().map_err(|_| {
                    Error::fixture(
                        path,
                        format!("line {}, column {}: cannot parse {:?}", i + first_line, j + 1, field),
                    )
                })
            })
            .collect::<Result<Vec<T>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

fn check_shape<T>(path: &Path, rows: &[Vec<T>], nrows: usize, ncols: usize) -> Result<()> {
    if rows.len() != nrows {
        return Err(Error::fixture(
            path,
            format!("expected {nrows} rows, found {}", rows.len()),
        ));
    }
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
        return Err(Error::fixture(
            path,
            format!("row {}: expected {ncols} columns, found {}", i + 1, row.len()),
        ));
    }
    Ok(())
}

fn load_coefficients(path: &Path, rows: usize) -> Result<ScaledIntMatrix> {
    let text = read(path)?;
    let (head, body) = text.split_once('\n').unwrap_or((text.as_str(), ""));
    let pref = head
        .trim()
        .strip_prefix("# prefactor=")
        .ok_or_else(|| Error::fixture(path, "line 1: missing '# prefactor=' header"))?;
    let (num, den) = pref.split_once('/').unwrap_or((pref, "1"));
    let parse = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| Error::fixture(path, format!("line 1: bad prefactor {pref:?}")))
    };
    let (numerator, denominator) = (parse(num)?, parse(den)?);
    if denominator == 0 {
        return Err(Error::fixture(path, "line 1: zero denominator"));
    }
    let entries = parse_grid(path, body, 2)?;
    check_shape(path, &entries, rows, crate::VEC_LEN)?;
    Ok(ScaledIntMatrix {
        numerator,
        denominator,
        entries,
    })
}

fn load_table<const N: usize>(path: &Path) -> Result<Vec<[f64; N]>> {
    let text = read(path)?;
    let (_, body) = text
        .split_once('\n')
        .ok_or_else(|| Error::fixture(path, "missing header"))?;
    let grid: Vec<Vec<f64>> = parse_grid(path, body, 2)?;
    check_shape(path, &grid, STATE_COUNT, N + 1)?;
    grid.iter()
        .enumerate()
        .map(|(i, row)| {
            if row[0] as usize != i + 1 {
                return Err(Error::fixture(
                    path,
                    format!("line {}: state index {} out of order", i + 2, row[0]),
                ));
            }
            Ok(std::array::from_fn(|k| row[k + 1]))
        })
        .collect()
}

pub fn load_fixtures(dir: impl AsRef<Path>) -> Result<FixtureSet> {
    let dir = dir.as_ref().to_path_buf();
    if !dir.is_dir() {
        return Err(Error::fixture(&dir, "fixture directory not found"));
    }
    let mut coefficient_matrices = BTreeMap::new();
    let mut observations = BTreeMap::new();
    let mut variance_tables = BTreeMap::new();
    let mut reconstructed = BTreeMap::new();
    for name in ProtocolName::ALL {
        let tag = name.tag();
        let rows = name.row_count();
        coefficient_matrices.insert(name, load_coefficients(&dir.join(format!("A_{tag}.csv")), rows)?);

        let path = dir.join(format!("b_{tag}.csv"));
        let b: Vec<Vec<i64>> = parse_grid(&path, &read(&path)?, 1)?;
        check_shape(&path, &b, rows, STATE_COUNT)?;
        observations.insert(name, b);

        if matches!(name, ProtocolName::Optimal | ProtocolName::Pauli) {
            let path = dir.join(format!("var_{tag}.csv"));
            let v: Vec<Vec<f64>> = parse_grid(&path, &read(&path)?, 1)?;
            check_shape(&path, &v, rows, STATE_COUNT)?;
            variance_tables.insert(name, v);
        }

        for n in 1..=STATE_COUNT {
            let path = dir.join(format!("rho_{tag}_{n}.json"));
            let rho = DensityMatrix::read_json(&path).map_err(|e| match e {
                Error::Fixture { .. } => e,
                other => Error::fixture(&path, other.to_string()),
            })?;
            reconstructed.insert((name, n), rho);
        }
    }
    let r_table = load_table::<5>(&dir.join("R.csv"))?;
    let t_table = load_table::<3>(&dir.join("T.csv"))?;

    let path = dir.join("states.json");
    let states: Vec<StateRecord> =
        serde_json::from_str(&read(&path)?).map_err(|e| Error::fixture(&path, format!("line {}: {e}", e.line())))?;
    if states.len() != STATE_COUNT {
        return Err(Error::fixture(
            &path,
            format!("expected {STATE_COUNT} states, found {}", states.len()),
        ));
    }
    Ok(FixtureSet {
        dir,
        coefficient_matrices,
        observations,
        variance_tables,
        r_table,
        t_table,
        reconstructed,
        states,
    })
}

/// Files whose checksum differs from the manifest, or that are missing.
pub fn verify_manifest(dir: impl AsRef<Path>) -> Result<Vec<String>> {
    let dir = dir.as_ref();
    let path = dir.join("MANIFEST.sha256");
    let mut bad = Vec::new();
    for (i, line) in read(&path)?.lines().enumerate() {
        let Some((digest, name)) = line.split_once("  ") else {
            return Err(Error::fixture(
                &path,
                format!("line {}: expected '<sha256>  <file>'", i + 1),
            ));
        };
        match fs::read(dir.join(name)) {
            Ok(bytes) if hex::encode(Sha256::digest(&bytes)) == digest => {}
            _ => bad.push(name.to_string()),
        }
    }
    Ok(bad)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    #[default]
    Error,
    /// Reported but does not fail validation.
    Warning,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub severity: Severity,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.push_with(Severity::Error, name, passed, detail);
    }

    pub fn push_with(&mut self, severity: Severity, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
            severity,
        });
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Failed checks of error severity.
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks
            .iter()
            .filter(|c| !c.passed && c.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Check> {
        self.checks
            .iter()
            .filter(|c| !c.passed && c.severity == Severity::Warning)
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }
}

/// Internal consistency of the transcription; violations are listed, not raised.
pub fn validate_fixtures(fix: &FixtureSet) -> ValidationReport {
    let mut report = ValidationReport::default();

    // direct rows of the Optimal data: variance equals the count
    let b = &fix.observations[&ProtocolName::Optimal];
    let var = &fix.variance_tables[&ProtocolName::Optimal];
    let mismatches = (0..4)
        .flat_map(|r| (0..STATE_COUNT).map(move |s| (r, s)))
        .filter(|&(r, s)| (var[r][s] - b[r][s].abs() as f64).abs() > 0.5)
        .count();
    report.push(
        "optimal direct-row variance equals counts",
        mismatches == 0,
        format!("{mismatches} mismatches"),
    );
    for (name, table) in &fix.variance_tables {
        let negative = table.iter().flatten().filter(|v| **v < 0.0).count();
        report.push(
            format!("{name} variances nonnegative"),
            negative == 0,
            format!("{negative} negative"),
        );
    }
    for name in [ProtocolName::Standard36, ProtocolName::Jkmw, ProtocolName::Mub] {
        let negative = fix.observations[&name].iter().flatten().filter(|v| **v < 0).count();
        report.push(
            format!("{name} direct counts nonnegative"),
            negative == 0,
            format!("{negative} negative"),
        );
    }

    let catalog = catalog_states();
    for ((name, n), rho) in &fix.reconstructed {
        let label = format!("rho {name} {n}");
        report.push(
            format!("{label} Hermitian"),
            rho.max_asymmetry() <= 1e-9,
            format!("max asymmetry {:.2e}", rho.max_asymmetry()),
        );
        let tr = rho.trace();
        report.push(
            format!("{label} unit trace"),
            (tr.re - 1.0).abs() <= PRINT_TOL && tr.im.abs() <= 1e-9,
            format!("trace {:.6}", tr.re),
        );
        // the printed columns 13-17 do not line up with the listed kets, so
        // proximity to the target is advisory
        let target = catalog[n - 1].density();
        let d = trace_distance(rho, &target);
        report.push_with(
            Severity::Warning,
            format!("{label} near target"),
            d < 0.5,
            format!("trace distance {d:.4}"),
        );
    }
    for (i, rec) in fix.states.iter().enumerate() {
        let overlap = rec.ket().inner(&catalog[i]).norm();
        report.push(
            format!("state {} matches catalog", rec.index),
            rec.index == i + 1 && (overlap - 1.0).abs() < 1e-8,
            format!("|<fixture|catalog>| = {overlap:.10}"),
        );
    }
    report
}

/// Reproduces coefficient matrices, reconstructions, radii and relative
/// distances from the fixture data and compares them with the printed values.
pub fn reproduce_published_tables(fix: &FixtureSet) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut recon: BTreeMap<(ProtocolName, usize), DensityMatrix> = BTreeMap::new();
    for name in ProtocolName::ALL {
        let p = build_protocol(name);
        let printed = fix.coefficient_matrices[&name].to_matrix();
        report.push(
            format!("{name} coefficient matrix"),
            p.coefficient_matrix == printed,
            "exact comparison",
        );

        let mut worst_rho: f64 = 0.0;
        let mut worst_r: f64 = 0.0;
        let mut failures = Vec::new();
        for n in 1..=STATE_COUNT {
            let obs = fix.observation_vector(name, n);
            match reconstruct_state(&p.coefficient_matrix, &obs) {
                Ok(rec) => {
                    let err = rec.rho.max_abs_diff(fix.matrix(name, n));
                    worst_rho = worst_rho.max(err);
                    match error_radius(&p.coefficient_matrix, &obs, &rec, DEFAULT_RESCALE) {
                        Ok(r) => worst_r = worst_r.max((r - fix.r_value(name, n)).abs()),
                        Err(e) => failures.push(format!("state {n}: {e}")),
                    }
                    recon.insert((name, n), rec.rho);
                }
                Err(e) => failures.push(format!("state {n}: {e}")),
            }
        }
        report.push(
            format!("{name} reconstructions"),
            failures.is_empty() && worst_rho <= PRINT_TOL,
            format!("max elementwise error {worst_rho:.2e}{}", join_failures(&failures)),
        );
        report.push(
            format!("{name} error radii"),
            failures.is_empty() && worst_r <= R_TOL,
            format!("max |R - R_table| {worst_r:.2e}"),
        );
    }
    let pairs = [
        (ProtocolName::Optimal, ProtocolName::Mub),
        (ProtocolName::Optimal, ProtocolName::Standard36),
        (ProtocolName::Mub, ProtocolName::Standard36),
    ];
    let mut worst_t: f64 = 0.0;
    let mut complete = true;
    for n in 1..=STATE_COUNT {
        for (k, (a, b)) in pairs.iter().enumerate() {
            match (recon.get(&(*a, n)), recon.get(&(*b, n))) {
                (Some(x), Some(y)) => worst_t = worst_t.max((trace_distance(x, y) - fix.t_table[n - 1][k]).abs()),
                _ => complete = false,
            }
        }
    }
    report.push(
        "relative trace distances",
        complete && worst_t <= PRINT_TOL,
        format!("max |T - T_table| {worst_t:.2e}"),
    );
    report
}

fn join_failures(f: &[String]) -> String {
    if f.is_empty() {
        String::new()
    } else {
        format!("; failed: {}", f.join(", "))
    }
}
