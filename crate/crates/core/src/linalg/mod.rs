//! Dense complex matrices, the canonical generators and the generator-sum
//! identity suite.

mod expm;
mod generators;
mod identities;
mod matrix;

use thiserror::Error;

pub use expm::expm;
pub use generators::{
    diag_unit, ordered_pairs, signature_matrix, skew_generator, sym_generator, symplectic_form,
    unit_matrix, IndexSets,
};
pub use identities::{check_identities, IdentityCheck, IdentityOrigin, IdentityReport, FLOAT_TOLERANCE};
pub use matrix::ComplexMatrix;
pub(crate) use matrix::{I, ONE, ZERO};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix exponential did not converge (1-norm {norm})")]
    ExpDiverged { norm: f64 },
    #[error("index {index} out of range 1..={size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("generator indices must satisfy r < s, got ({r}, {s})")]
    UnorderedPair { r: usize, s: usize },
    #[error("{what} must be at least {min}, got {found}")]
    TooSmall {
        what: &'static str,
        min: usize,
        found: usize,
    },
    #[error("signature ({p}, {q}) does not split n = {n}")]
    SignatureMismatch { n: usize, p: usize, q: usize },
}
