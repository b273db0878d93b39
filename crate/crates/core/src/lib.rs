//! Two-qubit polarization state tomography by linear inversion.
//!
//! The crate covers the whole pipeline: building measurement protocols and
//! their coefficient matrices, assembling observation vectors from photon
//! coincidence counts, solving for the density matrix, and bounding the
//! reconstruction error with a condition-number based uncertainty radius.

pub mod cli;
pub mod error;
pub mod figure;
pub mod fixtures;
mod linalg;
pub mod noise;
pub mod protocols;
pub mod qmetrics;
pub mod random;
pub mod reconstruct;
pub mod simulate;

pub use error::{Error, Result};
pub use noise::{error_band, error_radius, ErrorReport, RadiusConvention};
pub use protocols::{build_protocol, catalog_states, condition_number, Protocol, ProtocolName};
pub use qmetrics::{bures_disturbance, hs_distance, trace_distance, DensityMatrix, StateVector};
pub use reconstruct::{assemble_observations, reconstruct_state, CountTable, ObservationVector, Reconstruction};

/// Hilbert-space dimension of a two-qubit system.
pub const DIM: usize = 4;
/// Number of real parameters in a two-qubit density matrix.
pub const VEC_LEN: usize = 16;
