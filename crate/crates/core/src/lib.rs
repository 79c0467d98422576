//! Analysis of stabilizer and subsystem quantum error-correcting codes under
//! random single-qubit Pauli measurements.
//!
//! The central question answered by this crate: given a code and a set of
//! measured qubits (each in the X, Y, or Z basis), does the encoded logical
//! information survive? The decision reduces to GF(2) linear algebra on the
//! symplectic representation of the Pauli group, which makes lattice sizes of
//! a few thousand qubits tractable at Monte Carlo sample counts.
//!
//! # Layout
//!
//! - [`gf2`] — bit-packed GF(2) vectors, matrices, row reduction, kernels
//! - [`pauli`] — signless Pauli operators and generator-set machinery
//! - [`codes`] — constructors for the code families under study
//! - [`monitor`] — measurement patterns and the preservation verdict
//! - [`choi`] — Choi-state stabilizer groups and subsystem entropies
//!   (the slow, general-purpose oracle for [`monitor`])
//! - [`concat`] — concatenation level maps and outcome-distribution flows
//! - [`toric`] — Y-line operators and destruction bounds on the torus
//! - [`haar`] — dense-statevector experiments with Haar random codes and
//!   Haar random measurements
//! - [`experiment`] — seeded, reproducible sweep/threshold/flow harness
//!   backing the CLI
//!
//! # Example
//!
//! ```
//! use qec_monitor::codes::five_qubit;
//! use qec_monitor::monitor::{preservation_verdict, MeasurementPattern};
//!
//! let code = five_qubit();
//! // Measuring every qubit in Z reads out the logical Z class.
//! let all_z = MeasurementPattern::parse("ZZZZZ")?;
//! let verdict = preservation_verdict(&code, &all_z)?;
//! assert!(!verdict.preserved);
//! assert_eq!(verdict.measured_logicals.gens()[0].to_string(), "Z");
//!
//! // A single measured qubit cannot touch a distance-3 code.
//! let single = MeasurementPattern::parse("..X..")?;
//! assert!(preservation_verdict(&code, &single)?.preserved);
//! # Ok::<(), qec_monitor::Error>(())
//! ```

pub mod choi;
pub mod codes;
pub mod concat;
pub mod experiment;
pub mod gf2;
pub mod haar;
pub mod monitor;
pub mod pauli;
pub mod toric;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Operand dimensions do not agree (vector lengths, qubit counts, ...).
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// A constructor or operation was given an out-of-range parameter.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// The requested operation is not defined for this input.
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    /// A value failed to parse or violates a documented contract.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Underlying I/O failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    /// Malformed JSON configuration or data file.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
