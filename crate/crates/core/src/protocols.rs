//! Polarization projectors, the five tomography protocols, and their
//! coefficient matrices.
//!
//! Every protocol is described by an ordered list of measurement rows. A row
//! is a real combination of rank-1 two-photon projectors; its coefficient
//! matrix row is the linear functional `x -> Tr(O rho(x))`. The matrices are
//! always derived from the projectors, never typed in.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::qmetrics::{sig10, DensityMatrix};
use crate::{DIM, VEC_LEN};

/// Seconds each observation-vector element was registered for.
pub const ACQUISITION_SECONDS: f64 = 5.0;

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarization {
    H,
    V,
    D,
    A,
    L,
    R,
}

impl Polarization {
    pub const ALL: [Polarization; 6] = [
        Polarization::H,
        Polarization::V,
        Polarization::D,
        Polarization::A,
        Polarization::L,
        Polarization::R,
    ];

    pub fn ket(self) -> SingleQubitKet {
        // L = (H + iV)/sqrt2 and R = (H - iV)/sqrt2
        let amps = match self {
            Polarization::H => [c(1.0, 0.0), c(0.0, 0.0)],
            Polarization::V => [c(0.0, 0.0), c(1.0, 0.0)],
            Polarization::D => [c(S, 0.0), c(S, 0.0)],
            Polarization::A => [c(S, 0.0), c(-S, 0.0)],
            Polarization::L => [c(S, 0.0), c(0.0, S)],
            Polarization::R => [c(S, 0.0), c(0.0, -S)],
        };
        SingleQubitKet(amps)
    }

    fn letter(self) -> char {
        match self {
            Polarization::H => 'H',
            Polarization::V => 'V',
            Polarization::D => 'D',
            Polarization::A => 'A',
            Polarization::L => 'L',
            Polarization::R => 'R',
        }
    }
}

impl TryFrom<char> for Polarization {
    type Error = Error;

    fn try_from(ch: char) -> Result<Self> {
        match ch.to_ascii_uppercase() {
            'H' => Ok(Polarization::H),
            'V' => Ok(Polarization::V),
            'D' => Ok(Polarization::D),
            'A' => Ok(Polarization::A),
            'L' => Ok(Polarization::L),
            'R' => Ok(Polarization::R),
            _ => Err(Error::UnknownPolarization(ch.to_string())),
        }
    }
}

impl FromStr for Polarization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(ch), None) => Polarization::try_from(ch),
            _ => Err(Error::UnknownPolarization(s.to_string())),
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Single-photon polarization state in the `{H, V}` basis.
pub fn polarization_ket(label: &str) -> Result<SingleQubitKet> {
    Ok(label.parse::<Polarization>()?.ket())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitKet(pub [Complex64; 2]);

impl SingleQubitKet {
    pub fn new(h: Complex64, v: Complex64) -> Self {
        SingleQubitKet([h, v])
    }

    pub fn inner(&self, other: &SingleQubitKet) -> Complex64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        SingleQubitKet(self.0.map(|z| z / n))
    }
}

/// Two-photon amplitudes in `{HH, HV, VH, VV}` order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitKet(pub [Complex64; DIM]);

impl TwoQubitKet {
    pub fn product(a: &SingleQubitKet, b: &SingleQubitKet) -> Self {
        TwoQubitKet([a.0[0] * b.0[0], a.0[0] * b.0[1], a.0[1] * b.0[0], a.0[1] * b.0[1]])
    }

    /// Product state from a two-letter label such as `"DR"`.
    pub fn from_labels(label: &str) -> Result<Self> {
        let mut chars = label.chars();
        match (chars.next(), chars.next(), chars.next()) {
            (Some(a), Some(b), None) => Ok(Self::product(
                &Polarization::try_from(a)?.ket(),
                &Polarization::try_from(b)?.ket(),
            )),
            _ => Err(Error::UnknownPolarization(label.to_string())),
        }
    }

    fn labels(label: &str) -> Self {
        Self::from_labels(label).expect("static label")
    }

    /// `(a + phase * b) / sqrt2`.
    pub fn superpose(a: &TwoQubitKet, phase: Complex64, b: &TwoQubitKet) -> Self {
        TwoQubitKet(std::array::from_fn(|i| (a.0[i] + phase * b.0[i]) * S))
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        TwoQubitKet(self.0.map(|z| z / n))
    }

    pub fn inner(&self, other: &TwoQubitKet) -> Complex64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn projector(&self) -> Matrix4<Complex64> {
        let v = Vector4::from_column_slice(&self.0);
        v * v.adjoint()
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::pure(&self.0)
    }
}

/// Bell-type kets used by the entangled projections.
pub mod bell {
    use super::*;

    /// `(|HH> + |VV>)/sqrt2` and `(|HH> - |VV>)/sqrt2`.
    pub fn phi(plus: bool) -> TwoQubitKet {
        let sign = if plus { 1.0 } else { -1.0 };
        TwoQubitKet::superpose(&TwoQubitKet::labels("HH"), c(sign, 0.0), &TwoQubitKet::labels("VV"))
    }

    /// `(|HV> +- |VH>)/sqrt2`.
    pub fn psi(plus: bool) -> TwoQubitKet {
        let sign = if plus { 1.0 } else { -1.0 };
        TwoQubitKet::superpose(&TwoQubitKet::labels("HV"), c(sign, 0.0), &TwoQubitKet::labels("VH"))
    }

    /// `(|HH> +- i|VV>)/sqrt2`.
    pub fn phi_bar(plus: bool) -> TwoQubitKet {
        let sign = if plus { 1.0 } else { -1.0 };
        TwoQubitKet::superpose(&TwoQubitKet::labels("HH"), c(0.0, sign), &TwoQubitKet::labels("VV"))
    }

    /// `(|HV> +- i|VH>)/sqrt2`.
    pub fn psi_bar(plus: bool) -> TwoQubitKet {
        let sign = if plus { 1.0 } else { -1.0 };
        TwoQubitKet::superpose(&TwoQubitKet::labels("HV"), c(0.0, sign), &TwoQubitKet::labels("VH"))
    }
}

/// How the raw coincidence counts of one row become an observation value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Assembly {
    /// One projector, `b = c`.
    Direct,
    /// `1/2 (Pi - Pi')`, two counts.
    HalfDifference,
    /// `(Pi_1 + Pi_2) - (Pi_3 + Pi_4)` or an all-plus sum, four counts.
    SignedSum,
}

impl Assembly {
    pub fn arity(self) -> usize {
        match self {
            Assembly::Direct => 1,
            Assembly::HalfDifference => 2,
            Assembly::SignedSum => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub label: String,
    pub ket: TwoQubitKet,
}

impl Term {
    fn new(coeff: f64, label: &str, ket: TwoQubitKet) -> Self {
        Term {
            coeff,
            label: label.to_string(),
            ket,
        }
    }

    fn product(coeff: f64, label: &str) -> Self {
        Term::new(coeff, label, TwoQubitKet::labels(label))
    }
}

/// One element of the observation vector: `O = sum coeff * |ket><ket|`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRow {
    pub label: String,
    pub terms: Vec<Term>,
    pub assembly: Assembly,
}

impl MeasurementRow {
    fn direct(label: &str) -> Self {
        MeasurementRow {
            label: label.to_string(),
            terms: vec![Term::product(1.0, label)],
            assembly: Assembly::Direct,
        }
    }

    fn direct_ket(label: &str, ket: TwoQubitKet) -> Self {
        MeasurementRow {
            label: label.to_string(),
            terms: vec![Term::new(1.0, label, ket)],
            assembly: Assembly::Direct,
        }
    }

    fn half_difference(plus: Term, minus: Term) -> Self {
        MeasurementRow {
            label: format!("{}-{}", plus.label, minus.label),
            terms: vec![Term { coeff: 0.5, ..plus }, Term { coeff: -0.5, ..minus }],
            assembly: Assembly::HalfDifference,
        }
    }

    fn signed_sum(plus: [&str; 2], minus: [&str; 2]) -> Self {
        MeasurementRow {
            label: format!("({}+{})-({}+{})", plus[0], plus[1], minus[0], minus[1]),
            terms: plus
                .iter()
                .map(|l| Term::product(1.0, l))
                .chain(minus.iter().map(|l| Term::product(-1.0, l)))
                .collect(),
            assembly: Assembly::SignedSum,
        }
    }

    fn all_plus(labels: [&str; 4]) -> Self {
        MeasurementRow {
            label: labels.join("+"),
            terms: labels.iter().map(|l| Term::product(1.0, l)).collect(),
            assembly: Assembly::SignedSum,
        }
    }

    /// Sign of each raw count's contribution, in term order.
    pub fn signs(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.coeff.signum()).collect()
    }
}

/// Materializes `sum coeff * |ket><ket|`.
pub fn observable_matrix(row: &MeasurementRow) -> Matrix4<Complex64> {
    row.terms
        .iter()
        .fold(Matrix4::zeros(), |acc, t| acc + t.ket.projector() * c(t.coeff, 0.0))
}

/// The linear functional `x -> Tr(O rho(x))` as 16 real coefficients.
pub fn observable_coefficients(o: &Matrix4<Complex64>) -> [f64; VEC_LEN] {
    let mut out = [0.0; VEC_LEN];
    let mut k = 0;
    for n in 0..DIM {
        for m in n..DIM {
            if n == m {
                out[k] = o[(n, n)].re;
                k += 1;
            } else {
                // Tr picks up O_nm conj(rho_nm) + c.c.
                let z = o[(n, m)] + o[(m, n)].conj();
                out[k] = z.re;
                out[k + 1] = z.im;
                k += 2;
            }
        }
    }
    out
}

/// Rounds to the 1/64 grid when within `1e-12`; all projector entries built
/// from `{0, +-1, +-i}/sqrt2` amplitudes are dyadic rationals.
fn snap_dyadic(v: f64) -> f64 {
    let q = (v * 64.0).round() / 64.0;
    if (v - q).abs() < 1e-12 {
        q
    } else {
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ProtocolName {
    Optimal,
    #[serde(rename = "MUB")]
    Mub,
    Standard36,
    Pauli,
    #[serde(rename = "JKMW")]
    Jkmw,
}

impl ProtocolName {
    pub const ALL: [ProtocolName; 5] = [
        ProtocolName::Optimal,
        ProtocolName::Mub,
        ProtocolName::Standard36,
        ProtocolName::Pauli,
        ProtocolName::Jkmw,
    ];

    /// Single-letter tag used in fixture file names.
    pub fn tag(self) -> char {
        match self {
            ProtocolName::Optimal => 'O',
            ProtocolName::Mub => 'M',
            ProtocolName::Standard36 => 'S',
            ProtocolName::Pauli => 'P',
            ProtocolName::Jkmw => 'J',
        }
    }

    pub fn from_tag(tag: char) -> Option<Self> {
        ProtocolName::ALL
            .into_iter()
            .find(|p| p.tag() == tag.to_ascii_uppercase())
    }

    pub fn row_count(self) -> usize {
        match self {
            ProtocolName::Optimal => 16,
            ProtocolName::Mub => 20,
            ProtocolName::Standard36 => 36,
            ProtocolName::Pauli => 16,
            ProtocolName::Jkmw => 16,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProtocolName::Optimal => "optimal",
            ProtocolName::Mub => "mub",
            ProtocolName::Standard36 => "standard36",
            ProtocolName::Pauli => "pauli",
            ProtocolName::Jkmw => "jkmw",
        }
    }
}

impl fmt::Display for ProtocolName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProtocolName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "optimal" | "o" => Ok(ProtocolName::Optimal),
            "mub" | "m" => Ok(ProtocolName::Mub),
            "standard36" | "standard" | "s" => Ok(ProtocolName::Standard36),
            "pauli" | "p" => Ok(ProtocolName::Pauli),
            "jkmw" | "j" => Ok(ProtocolName::Jkmw),
            _ => Err(Error::UnknownProtocol(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Protocol {
    pub name: ProtocolName,
    pub rows: Vec<MeasurementRow>,
    pub coefficient_matrix: DMatrix<f64>,
    pub acquisition_seconds_per_row: f64,
}

impl Protocol {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn kappa(&self) -> f64 {
        condition_number(&self.coefficient_matrix).expect("built protocols have full rank")
    }

    pub fn to_json(&self) -> ProtocolJson {
        ProtocolJson {
            name: self.name,
            rows: self
                .rows
                .iter()
                .map(|r| RowJson {
                    label: r.label.clone(),
                    terms: r
                        .terms
                        .iter()
                        .map(|t| TermJson {
                            coeff: t.coeff,
                            label: t.label.clone(),
                            ket: t.ket.0.map(|z| [sig10(z.re), sig10(z.im)]),
                        })
                        .collect(),
                    assembly: r.assembly,
                })
                .collect(),
            a: self
                .coefficient_matrix
                .row_iter()
                .map(|r| r.iter().copied().collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: f64,
    pub label: String,
    pub ket: [[f64; 2]; DIM],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RowJson {
    pub label: String,
    pub terms: Vec<TermJson>,
    pub assembly: Assembly,
}

/// `{"name":..., "rows":[...], "A":[[...]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProtocolJson {
    pub name: ProtocolName,
    pub rows: Vec<RowJson>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
}

fn diff(plus: &str, minus: &str) -> MeasurementRow {
    MeasurementRow::half_difference(Term::product(1.0, plus), Term::product(1.0, minus))
}

fn bell_diff(plus: (&str, TwoQubitKet), minus: (&str, TwoQubitKet)) -> MeasurementRow {
    MeasurementRow::half_difference(Term::new(1.0, plus.0, plus.1), Term::new(1.0, minus.0, minus.1))
}

fn optimal_rows() -> Vec<MeasurementRow> {
    let mut rows: Vec<_> = ["HH", "HV", "VH", "VV"]
        .iter()
        .map(|l| MeasurementRow::direct(l))
        .collect();
    for (p, m) in [
        ("HD", "HA"),
        ("HL", "HR"),
        ("DH", "AH"),
        ("LH", "RH"),
        ("VD", "VA"),
        ("VL", "VR"),
        ("DV", "AV"),
        ("LV", "RV"),
    ] {
        rows.push(diff(p, m));
    }
    rows.push(bell_diff(("Psi+", bell::psi(true)), ("Psi-", bell::psi(false))));
    rows.push(bell_diff(
        ("PsiBar+", bell::psi_bar(true)),
        ("PsiBar-", bell::psi_bar(false)),
    ));
    rows.push(bell_diff(("Phi+", bell::phi(true)), ("Phi-", bell::phi(false))));
    rows.push(bell_diff(
        ("PhiBar+", bell::phi_bar(true)),
        ("PhiBar-", bell::phi_bar(false)),
    ));
    rows
}

fn standard_rows() -> Vec<MeasurementRow> {
    let mut rows = Vec::with_capacity(36);
    for a in Polarization::ALL {
        for b in Polarization::ALL {
            rows.push(MeasurementRow::direct(&format!("{a}{b}")));
        }
    }
    rows
}

fn jkmw_rows() -> Vec<MeasurementRow> {
    [
        "HH", "HV", "HD", "HL", "VH", "VV", "VD", "VL", "RH", "RV", "RD", "RL", "DH", "DV", "DD", "DR",
    ]
    .iter()
    .map(|l| MeasurementRow::direct(l))
    .collect()
}

fn mub_rows() -> Vec<MeasurementRow> {
    let mut rows: Vec<_> = ["DH", "DV", "AH", "AV", "LD", "LA", "RD", "RA", "VR", "VL", "HR", "HL"]
        .iter()
        .map(|l| MeasurementRow::direct(l))
        .collect();
    rows.push(MeasurementRow::direct_ket("Phi+", bell::phi(true)));
    rows.push(MeasurementRow::direct_ket("Phi-", bell::phi(false)));
    rows.push(MeasurementRow::direct_ket("Psi+", bell::psi(true)));
    rows.push(MeasurementRow::direct_ket("Psi-", bell::psi(false)));
    let l = TwoQubitKet::labels;
    for (label, a, phase, b) in [
        ("DL+iAR", "DL", c(0.0, 1.0), "AR"),
        ("DL-iAR", "DL", c(0.0, -1.0), "AR"),
        ("DR+iAL", "DR", c(0.0, 1.0), "AL"),
        ("DR-iAL", "DR", c(0.0, -1.0), "AL"),
    ] {
        rows.push(MeasurementRow::direct_ket(
            label,
            TwoQubitKet::superpose(&l(a), phase, &l(b)),
        ));
    }
    rows
}

/// Two-qubit Pauli correlations `sigma_i (x) sigma_j` written as signed sums
/// of four product projectors, plus the identity row.
fn pauli_rows() -> Vec<MeasurementRow> {
    let ss = MeasurementRow::signed_sum;
    vec![
        ss(["DD", "AA"], ["DA", "AD"]), // X X
        ss(["DL", "AR"], ["DR", "AL"]), // X Y
        ss(["DH", "AV"], ["DV", "AH"]), // X Z
        ss(["DH", "DV"], ["AH", "AV"]), // X I
        ss(["LD", "RA"], ["LA", "RD"]), // Y X
        ss(["LL", "RR"], ["LR", "RL"]), // Y Y
        ss(["LH", "RV"], ["LV", "RH"]), // Y Z
        ss(["LH", "LV"], ["RH", "RV"]), // Y I
        ss(["HD", "VA"], ["HA", "VD"]), // Z X
        ss(["HL", "VR"], ["HR", "VL"]), // Z Y
        ss(["HH", "VV"], ["HV", "VH"]), // Z Z
        ss(["HH", "HV"], ["VH", "VV"]), // Z I
        ss(["HD", "VD"], ["HA", "VA"]), // I X
        ss(["HL", "VL"], ["HR", "VR"]), // I Y
        ss(["HH", "VH"], ["HV", "VV"]), // I Z
        MeasurementRow::all_plus(["HH", "HV", "VH", "VV"]),
    ]
}

pub fn build_protocol(name: ProtocolName) -> Protocol {
    let rows = match name {
        ProtocolName::Optimal => optimal_rows(),
        ProtocolName::Mub => mub_rows(),
        ProtocolName::Standard36 => standard_rows(),
        ProtocolName::Pauli => pauli_rows(),
        ProtocolName::Jkmw => jkmw_rows(),
    };
    debug_assert_eq!(rows.len(), name.row_count());
    let coefficient_matrix = coefficient_matrix(&rows);
    Protocol {
        name,
        rows,
        coefficient_matrix,
        acquisition_seconds_per_row: ACQUISITION_SECONDS,
    }
}

/// Stacks the coefficient rows of every measurement.
pub fn coefficient_matrix(rows: &[MeasurementRow]) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(rows.len(), VEC_LEN);
    for (r, row) in rows.iter().enumerate() {
        let coeffs = observable_coefficients(&observable_matrix(row));
        for (k, v) in coeffs.iter().enumerate() {
            a[(r, k)] = snap_dyadic(*v);
        }
    }
    a
}

/// Spectral condition number `sigma_max / sigma_min`.
pub fn condition_number(a: &DMatrix<f64>) -> Result<f64> {
    linalg::check_full_column_rank(a)?;
    let (max, min) = linalg::extreme_singular_values(a);
    Ok(max / min)
}

/// Single-photon elliptic states entering the product states 13 and 14.
pub fn elliptic_states() -> [(SingleQubitKet, SingleQubitKet); 2] {
    [
        (
            SingleQubitKet::new(c(-0.6556, 0.6248), c(0.4241, 0.0)),
            SingleQubitKet::new(c(-0.1415, -0.7165), c(0.6831, 0.0)),
        ),
        (
            SingleQubitKet::new(c(-0.9608, 0.2091), c(0.1822, 0.0)),
            SingleQubitKet::new(c(0.2613, 0.7338), c(0.6271, 0.0)),
        ),
    ]
}

/// Labels of the 17 prepared target states, in catalog order.
pub const CATALOG_LABELS: [&str; 17] = [
    "(|HH> - |VV>)/sqrt2",
    "(|HH> + |VV>)/sqrt2",
    "(|HH> - i|VV>)/sqrt2",
    "(|DR> - i|AL>)/sqrt2",
    "(|HV> + i|VH>)/sqrt2",
    "(|HV> + |VH>)/sqrt2",
    "|HV>",
    "(|HH> + i|VV>)/sqrt2",
    "(|HV> - |VH>)/sqrt2",
    "(|HV> - i|VH>)/sqrt2",
    "(|DL> + i|AR>)/sqrt2",
    "(|DL> - i|AR>)/sqrt2",
    "|e1a e1b>",
    "|e2a e2b>",
    "0.79|HV> - 0.61|VH>",
    "0.50|HV> - 0.87|VH>",
    "0.35|HV> - 0.94|VH>",
];

/// The 17 target states, each normalized to unit length.
pub fn catalog_states() -> Vec<TwoQubitKet> {
    let l = TwoQubitKet::labels;
    let sup = TwoQubitKet::superpose;
    let i = c(0.0, 1.0);
    let one = c(1.0, 0.0);
    let [e1, e2] = elliptic_states();
    let weighted = |a: f64, b: f64| {
        let (hv, vh) = (l("HV"), l("VH"));
        TwoQubitKet(std::array::from_fn(|k| hv.0[k] * a + vh.0[k] * b))
    };
    let states = vec![
        sup(&l("HH"), -one, &l("VV")),
        sup(&l("HH"), one, &l("VV")),
        sup(&l("HH"), -i, &l("VV")),
        sup(&l("DR"), -i, &l("AL")),
        sup(&l("HV"), i, &l("VH")),
        sup(&l("HV"), one, &l("VH")),
        l("HV"),
        sup(&l("HH"), i, &l("VV")),
        sup(&l("HV"), -one, &l("VH")),
        sup(&l("HV"), -i, &l("VH")),
        sup(&l("DL"), i, &l("AR")),
        sup(&l("DL"), -i, &l("AR")),
        TwoQubitKet::product(&e1.0, &e1.1),
        TwoQubitKet::product(&e2.0, &e2.1),
        weighted(0.79, -0.61),
        weighted(0.50, -0.87),
        weighted(0.35, -0.94),
    ];
    states.into_iter().map(|s| s.normalized()).collect()
}
