//! Eigenfamilies and harmonic morphisms on classical matrix Lie groups.
//!
//! Signed orthonormal bases and sampling for the real forms and their
//! compact duals, exact second-order jets for the tension and conformality
//! operators, the (bi-)eigenfamily constructions with their constants, and
//! rational quotients of homogeneous polynomials over them. Every
//! verification returns a [`report::VerificationReport`] with one named
//! check per relation.

pub mod calculus;
pub mod cli;
pub mod duality;
pub mod families;
pub mod groups;
pub mod linalg;
pub mod morphisms;
pub mod report;
pub mod suite;
