//! Rational harmonic morphisms built as quotients of (bi-)homogeneous
//! polynomials in the members of an eigenfamily.

mod appendix;
mod morphism;
mod poly;

use thiserror::Error;

use crate::calculus::CalculusError;
use crate::families::FamilyError;
use crate::groups::GroupError;

pub use appendix::{power_constants, power_family, verify_appendix_lemmas};
pub use morphism::{
    build_morphism, compose, direct_tau_kappa, example_sl2, imaginary_part_range, quotient_tau_kappa, verify_morphism,
    MorphismSource, RationalMorphism, DUAL_PATH_TOLERANCE, MAX_ATTEMPTS_PER_SAMPLE,
};
pub use poly::MultiPoly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MorphismError {
    #[error("exponent vectors must have length {expected}, got {found}")]
    ExponentLength { expected: usize, found: usize },
    #[error("polynomial has no non-zero terms")]
    EmptyPolynomial,
    #[error("polynomial is not (bi-)homogeneous")]
    NotHomogeneous,
    #[error("polynomial takes {found} variables but the family has {expected} generators")]
    Arity { expected: usize, found: usize },
    #[error("numerator and denominator are linearly dependent")]
    Dependent,
    #[error("numerator has degree {p:?} but denominator has degree {q:?}")]
    DegreeMismatch { p: (u32, u32), q: (u32, u32) },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("{0} has no cross constant, so polynomials must not mix both families")]
    NoCrossConstant(String),
    #[error("morphism file says {stated} but its family lives on {family}")]
    DescriptorMismatch { stated: String, family: String },
    #[error("need at least one sample")]
    NoSamples,
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
