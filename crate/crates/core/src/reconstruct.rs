//! Observation-vector assembly and linear inversion.

use std::collections::HashMap;
use std::io::{Read, Write};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::protocols::{Assembly, Protocol, ProtocolName, ACQUISITION_SECONDS};
use crate::qmetrics::{unvec_density, DensityMatrix, StateVector, DIAGONAL_INDICES};

/// How long each projector of a multi-term row was counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Acquisition {
    /// Every projector got the whole window. An `n`-term row is brought to
    /// the time-shared scale by dividing by `n` (then rounding).
    #[default]
    FullWindow,
    /// The window was split evenly over the `n` projectors of a row, so the
    /// signed sum of counts is used as is.
    TimeShared,
}

/// Rounding applied when full-window counts are divided by the row arity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rounding {
    /// Toward negative infinity.
    #[default]
    Floor,
    TowardZero,
    HalfAwayFromZero,
    /// Keep fractional values.
    Exact,
}

impl Rounding {
    pub fn apply(self, v: f64) -> f64 {
        match self {
            Rounding::Floor => v.floor(),
            Rounding::TowardZero => v.trunc(),
            Rounding::HalfAwayFromZero => v.round(),
            Rounding::Exact => v,
        }
    }
}

/// Raw coincidence counts for one prepared state under one protocol.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountTable {
    pub protocol: ProtocolName,
    pub state: String,
    pub row_labels: Vec<String>,
    /// One entry per protocol row, with 1, 2 or 4 counts in term order.
    pub raw: Vec<Vec<i64>>,
    pub acquisition_seconds: f64,
    pub acquisition: Acquisition,
}

impl CountTable {
    pub fn new(protocol: &Protocol, state: impl Into<String>, raw: Vec<Vec<i64>>, acquisition: Acquisition) -> Self {
        CountTable {
            protocol: protocol.name,
            state: state.into(),
            row_labels: protocol.rows.iter().map(|r| r.label.clone()).collect(),
            raw,
            acquisition_seconds: protocol.acquisition_seconds_per_row,
            acquisition,
        }
    }

    /// Reads every table in a `protocol,state,row_index,row_label,c1[,c2[,c3,c4]]`
    /// file, in order of first appearance.
    pub fn read_csv<R: Read>(reader: R) -> Result<Vec<CountTable>> {
        let mut rdr = csv::ReaderBuilder::new()
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut tables: Vec<CountTable> = Vec::new();
        let mut index: HashMap<(ProtocolName, String), usize> = HashMap::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record?;
            let at = |msg: String| Error::InvalidArgument(format!("counts line {}: {msg}", line + 2));
            if record.len() < 5 {
                return Err(at(format!("expected at least 5 fields, got {}", record.len())));
            }
            let protocol: ProtocolName = record[0].parse()?;
            let state = record[1].to_string();
            let row_index: usize = record[2]
                .parse()
                .map_err(|_| at(format!("bad row_index {:?}", &record[2])))?;
            let counts = record
                .iter()
                .skip(4)
                .filter(|f| !f.is_empty())
                .map(|f| f.parse::<i64>().map_err(|_| at(format!("bad count {f:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let slot = *index.entry((protocol, state.clone())).or_insert_with(|| {
                tables.push(CountTable {
                    protocol,
                    state,
                    row_labels: Vec::new(),
                    raw: Vec::new(),
                    acquisition_seconds: ACQUISITION_SECONDS,
                    acquisition: Acquisition::default(),
                });
                tables.len() - 1
            });
            let table = &mut tables[slot];
            if row_index != table.raw.len() + 1 {
                return Err(at(format!(
                    "row_index {row_index} out of sequence (expected {})",
                    table.raw.len() + 1
                )));
            }
            table.row_labels.push(record[3].to_string());
            table.raw.push(counts);
        }
        Ok(tables)
    }

    pub fn write_csv<W: Write>(tables: &[CountTable], writer: W) -> Result<()> {
        let arity = tables
            .iter()
            .flat_map(|t| t.raw.iter().map(Vec::len))
            .max()
            .unwrap_or(1);
        let mut wtr = csv::WriterBuilder::new().flexible(true).from_writer(writer);
        let mut header = vec![
            "protocol".to_string(),
            "state".into(),
            "row_index".into(),
            "row_label".into(),
        ];
        header.extend((1..=arity).map(|i| format!("c{i}")));
        wtr.write_record(&header)?;
        for t in tables {
            for (i, counts) in t.raw.iter().enumerate() {
                let label = t.row_labels.get(i).map(String::as_str).unwrap_or("");
                let mut rec = vec![
                    t.protocol.as_str().to_string(),
                    t.state.clone(),
                    (i + 1).to_string(),
                    label.to_string(),
                ];
                rec.extend(counts.iter().map(|c| c.to_string()));
                wtr.write_record(&rec)?;
            }
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Observation values `b` with their variance estimates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservationVector {
    pub b: Vec<f64>,
    pub variance: Vec<f64>,
}

impl ObservationVector {
    pub fn new(b: Vec<f64>, variance: Vec<f64>) -> Result<Self> {
        if b.len() != variance.len() {
            return Err(Error::DimensionMismatch {
                expected: b.len(),
                actual: variance.len(),
            });
        }
        if let Some(index) = b.iter().chain(variance.iter()).position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                index: index % b.len().max(1),
            });
        }
        Ok(ObservationVector { b, variance })
    }

    /// Poisson model: the variance of each element is its magnitude.
    pub fn poisson(b: Vec<f64>) -> Result<Self> {
        let variance = b.iter().map(|v| v.abs()).collect();
        Self::new(b, variance)
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn b_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.b)
    }

    pub fn b_norm(&self) -> f64 {
        self.b.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `||sigma(b)||`, the Euclidean norm of the standard deviations.
    pub fn sigma_norm(&self) -> f64 {
        self.variance.iter().sum::<f64>().sqrt()
    }

    /// `b -> c b`, `sigma^2 -> c^2 sigma^2`.
    pub fn scaled(&self, c: f64) -> Self {
        ObservationVector {
            b: self.b.iter().map(|v| v * c).collect(),
            variance: self.variance.iter().map(|v| v * c * c).collect(),
        }
    }
}

pub fn assemble_observations(protocol: &Protocol, counts: &CountTable) -> Result<ObservationVector> {
    assemble_observations_with(protocol, counts, Rounding::default())
}

pub fn assemble_observations_with(
    protocol: &Protocol,
    counts: &CountTable,
    rounding: Rounding,
) -> Result<ObservationVector> {
    if counts.protocol != protocol.name {
        return Err(Error::InvalidArgument(format!(
            "count table is for {} but protocol is {}",
            counts.protocol, protocol.name
        )));
    }
    if counts.raw.len() != protocol.len() {
        return Err(Error::DimensionMismatch {
            expected: protocol.len(),
            actual: counts.raw.len(),
        });
    }
    for (r, (row, raw)) in protocol.rows.iter().zip(&counts.raw).enumerate() {
        if raw.len() != row.assembly.arity() {
            return Err(Error::ArityMismatch {
                row: r + 1,
                expected: row.assembly.arity(),
                actual: raw.len(),
            });
        }
        if let Some(&value) = raw.iter().find(|&&c| c < 0) {
            return Err(Error::NegativeCount { row: r + 1, value });
        }
    }
    let raw: Vec<Vec<f64>> = counts
        .raw
        .iter()
        .map(|r| r.iter().map(|&c| c as f64).collect())
        .collect();
    assemble_values(protocol, &raw, counts.acquisition, rounding)
}

/// The assembly rule on real-valued per-term counts, e.g. expected rates.
pub fn assemble_values(
    protocol: &Protocol,
    raw: &[Vec<f64>],
    acquisition: Acquisition,
    rounding: Rounding,
) -> Result<ObservationVector> {
    if raw.len() != protocol.len() {
        return Err(Error::DimensionMismatch {
            expected: protocol.len(),
            actual: raw.len(),
        });
    }
    let mut b = Vec::with_capacity(protocol.len());
    let mut variance = Vec::with_capacity(protocol.len());
    for (r, (row, raw)) in protocol.rows.iter().zip(raw).enumerate() {
        let arity = row.assembly.arity();
        if raw.len() != arity {
            return Err(Error::ArityMismatch {
                row: r + 1,
                expected: arity,
                actual: raw.len(),
            });
        }
        let signed: f64 = row.signs().iter().zip(raw).map(|(s, c)| s * c).sum();
        let total: f64 = raw.iter().sum();
        let (value, var) = match (row.assembly, acquisition) {
            (Assembly::Direct, _) | (_, Acquisition::TimeShared) => (signed, total),
            (_, Acquisition::FullWindow) => {
                let n = arity as f64;
                (rounding.apply(signed / n), rounding.apply(total / n))
            }
        };
        b.push(value);
        variance.push(var);
    }
    ObservationVector::new(b, variance)
}

/// Linear-inversion estimate for one state.
#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    pub rho: DensityMatrix,
    pub x_raw: StateVector,
    /// `||A x - b||`; zero up to rounding for square systems.
    pub residual_norm: f64,
}

impl Reconstruction {
    pub fn trace_raw(&self) -> f64 {
        self.x_raw.trace()
    }

    /// Trace-normalized state vector.
    pub fn x_normalized(&self) -> StateVector {
        self.x_raw.scale(1.0 / self.trace_raw())
    }
}

pub fn reconstruct_state(a: &DMatrix<f64>, obs: &ObservationVector) -> Result<Reconstruction> {
    if a.ncols() != crate::VEC_LEN {
        return Err(Error::DimensionMismatch {
            expected: crate::VEC_LEN,
            actual: a.ncols(),
        });
    }
    let b = obs.b_vector();
    let x = linalg::solve(a, &b)?;
    let residual_norm = (a * &x - &b).norm();
    let x_raw = StateVector::from_slice(x.as_slice())?;
    let trace: f64 = DIAGONAL_INDICES.iter().map(|&i| x[i]).sum();
    if trace.abs() < 1e-9 * x.norm() || x.norm() == 0.0 {
        return Err(Error::DegenerateData { trace });
    }
    let rho = DensityMatrix::from_raw(unvec_density(&x_raw).matrix() / num_complex::Complex64::new(trace, 0.0));
    Ok(Reconstruction {
        rho,
        x_raw,
        residual_norm,
    })
}

/// Outcome for one state in a batch.
#[derive(Debug)]
pub struct BatchItem {
    pub state: String,
    pub result: Result<(ObservationVector, Reconstruction)>,
}

/// Assembles and inverts every table in parallel, keeping input order.
/// A failing state does not abort the batch.
pub fn reconstruct_all(protocol: &Protocol, counts: &[CountTable], rounding: Rounding) -> Vec<BatchItem> {
    counts
        .par_iter()
        .map(|table| BatchItem {
            state: table.state.clone(),
            result: assemble_observations_with(protocol, table, rounding)
                .and_then(|obs| reconstruct_state(&protocol.coefficient_matrix, &obs).map(|r| (obs, r))),
        })
        .collect()
}

/// Noise-free observation vector `b = A vec(rho)`.
pub fn ideal_observations(protocol: &Protocol, rho: &DensityMatrix) -> Result<ObservationVector> {
    let x = crate::qmetrics::vec_density(rho)?;
    let b = &protocol.coefficient_matrix * DVector::from_column_slice(x.as_slice());
    ObservationVector::poisson(b.iter().copied().collect())
}
