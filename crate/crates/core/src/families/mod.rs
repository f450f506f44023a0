//! Eigenfamilies and bi-eigenfamilies: constructors for each group, the
//! isotropic-subspace helpers they need, and the axiom verifier.

mod constructors;
mod verify;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{CalculusError, ScalarField};
use crate::groups::{Family, GroupDescriptor, GroupError};

pub use constructors::{
    bifamily_sopq, bifamily_sostar, bifamily_sppq, bifamily_upq, construct, family_glr, family_sopq_uv, family_sostar_a,
    family_spr_ab, family_spr_v, family_upq_uv, family_ustar_p, family_ustar_xi, is_isotropic, max_isotropic_subspace,
    parse_complex_list, ustar_symmetry_defect, default_vector, FamilyParams, Theorem, ISOTROPY_TOLERANCE,
};
pub use verify::{verify_family, VerifyOptions};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("{what} must have length {expected}, got {found}")]
    Length { what: &'static str, expected: usize, found: usize },
    #[error("{what} must be non-zero")]
    ZeroVector { what: &'static str },
    #[error("{what} is not isotropic: (u,u) = {value:.3e}")]
    NotIsotropic { what: &'static str, value: f64 },
    #[error("{what} must vanish outside {block}")]
    Support { what: &'static str, block: &'static str },
    #[error("{what} needs {requirement}")]
    TooSmall { what: &'static str, requirement: String },
    #[error("theorem {theorem} builds families on {expected}, not {descriptor}")]
    WrongGroup { theorem: String, expected: String, descriptor: String },
    #[error("unknown theorem {0:?}; expected one of 4.2, 5.3, 5.4, 6.2, 6.3, 8.2, 8.3, 10.2, 10.3, 11.2, 11.3, 12.2")]
    UnknownTheorem(String),
    #[error("cannot parse complex number {0:?}")]
    ComplexSyntax(String),
    #[error("the family has no generators")]
    Empty,
    #[error("need at least one sample")]
    NoSamples,
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A spanning set of an eigenfamily with its expected constants:
/// `tau(phi) = lambda phi` and `kappa(phi, psi) = mu phi psi`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenFamily {
    pub descriptor: GroupDescriptor,
    pub provenance: String,
    pub generators: Vec<ScalarField>,
    pub lambda: Complex64,
    pub mu: Complex64,
}

/// Two eigenfamilies with a cross relation `kappa(phi, psi) = mu_cross phi psi`.
///
/// `mu_cross` is `None` for pairs whose cross relation is not part of the
/// construction; the verifier then only measures it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiEigenFamily {
    pub provenance: String,
    pub e1: EigenFamily,
    pub e2: EigenFamily,
    pub mu_cross: Option<Complex64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnyFamily {
    Eigen(EigenFamily),
    Bi(BiEigenFamily),
}

impl EigenFamily {
    pub fn new(
        descriptor: GroupDescriptor,
        provenance: impl Into<String>,
        generators: Vec<ScalarField>,
        lambda: f64,
        mu: f64,
    ) -> Result<Self, FamilyError> {
        if generators.is_empty() {
            return Err(FamilyError::Empty);
        }
        Ok(Self {
            descriptor,
            provenance: provenance.into(),
            generators,
            lambda: Complex64::new(lambda, 0.0),
            mu: Complex64::new(mu, 0.0),
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Every generator multiplied by `c`; the constants are unchanged.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self { generators: self.generators.iter().map(|g| g.scale(c)).collect(), ..self.clone() }
    }

    /// The same generators on the unit-determinant subgroup.
    ///
    /// Dropping the central direction `I/sqrt(N)` from the basis removes
    /// `phi/N` from the tension of a linear field and `phi psi / N` from
    /// kappa, so both constants shift by `-1/N`.
    pub fn restrict_to_det_one(&self) -> Result<Self, FamilyError> {
        let family = match self.descriptor.family {
            Family::GlR => Family::SlR,
            Family::UStar => Family::SuStar,
            _ => {
                return Err(FamilyError::WrongGroup {
                    theorem: self.provenance.clone(),
                    expected: "gl_r or u_star".into(),
                    descriptor: self.descriptor.to_string(),
                })
            }
        };
        let mut d = GroupDescriptor::new(family, self.descriptor.n)?;
        d.metric = self.descriptor.metric;
        let shift = 1.0 / d.matrix_size() as f64;
        Ok(Self {
            descriptor: d,
            lambda: self.lambda - shift,
            mu: self.mu - shift,
            ..self.clone()
        })
    }
}

impl BiEigenFamily {
    pub fn descriptor(&self) -> GroupDescriptor {
        self.e1.descriptor
    }
}

impl AnyFamily {
    pub fn descriptor(&self) -> GroupDescriptor {
        match self {
            AnyFamily::Eigen(f) => f.descriptor,
            AnyFamily::Bi(b) => b.descriptor(),
        }
    }

    pub fn provenance(&self) -> &str {
        match self {
            AnyFamily::Eigen(f) => &f.provenance,
            AnyFamily::Bi(b) => &b.provenance,
        }
    }

    /// The component eigenfamilies, one or two.
    pub fn parts(&self) -> Vec<&EigenFamily> {
        match self {
            AnyFamily::Eigen(f) => vec![f],
            AnyFamily::Bi(b) => vec![&b.e1, &b.e2],
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        match self {
            AnyFamily::Eigen(f) => AnyFamily::Eigen(f.scaled(c)),
            AnyFamily::Bi(b) => AnyFamily::Bi(BiEigenFamily { e1: b.e1.scaled(c), e2: b.e2.scaled(c), ..b.clone() }),
        }
    }
}

impl From<EigenFamily> for AnyFamily {
    fn from(f: EigenFamily) -> Self {
        AnyFamily::Eigen(f)
    }
}

impl From<BiEigenFamily> for AnyFamily {
    fn from(f: BiEigenFamily) -> Self {
        AnyFamily::Bi(f)
    }
}
