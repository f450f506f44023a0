//! Scalar fields on matrix groups, their exact left-invariant 2-jets, and
//! the signed tension and conformality operators.

mod field;
mod jets;
mod lemmas;

use thiserror::Error;

use crate::groups::GroupError;
use crate::linalg::LinalgError;

pub use field::{coordinate_field, BlockSelector, Node, ScalarField, TraceTerm};
pub use jets::{fd_oracle, jet_eval, kappa, tension, FieldJets, Jet2, PointJets, DEFAULT_POLE_GUARD};
pub use lemmas::{verify_lemma, CoordinateLemma, LemmaOptions};

/// Relative residual `|lhs - rhs| / max(1, |rhs|)`.
pub fn relative_residual(lhs: num_complex::Complex64, rhs: num_complex::Complex64) -> f64 {
    (lhs - rhs).norm() / rhs.norm().max(1.0)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalculusError {
    #[error("a trace form needs at least one term")]
    EmptyTraceForm,
    #[error("coefficient matrix must be square, got {rows}x{cols}")]
    CoefficientShape { rows: usize, cols: usize },
    #[error("quotient denominator is the zero field")]
    ZeroDenominator,
    #[error("quotient pole: |denominator| = {value:.3e} is within the guard {guard:.1e}")]
    Pole { value: f64, guard: f64 },
    #[error("{block:?} coefficient of size {coefficient} does not fit a {matrix}x{matrix} matrix")]
    BlockMismatch { block: BlockSelector, coefficient: usize, matrix: usize },
    #[error("block {block:?} is not defined for {descriptor}")]
    InvalidBlock { block: BlockSelector, descriptor: String },
    #[error("finite-difference step must be positive, got {0}")]
    Step(f64),
    #[error("unknown lemma {0:?}; expected one of 4.1, 5.1, 6.1, 8.1, 10.1, 11.1, 12.1")]
    UnknownLemma(String),
    #[error("lemma {lemma} concerns {expected}, not {descriptor}")]
    LemmaGroup { lemma: String, expected: &'static str, descriptor: String },
    #[error("need at least one sample")]
    NoSamples,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
