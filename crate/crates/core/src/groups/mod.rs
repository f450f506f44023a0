//! Group descriptors, orthonormal Lie-algebra bases, membership tests and
//! sampling through the exponential map.

mod basis;
mod membership;
mod sampling;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{ComplexMatrix, LinalgError};

pub use basis::{algebra_basis, basis_for, verify_basis, SignedBasis, BASIS_TOLERANCE};
pub use membership::{algebra_residual, membership_residual};
pub use sampling::{point_seed, sample_point, Sampler, DEFAULT_SCALE, MEMBERSHIP_TOLERANCE};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("cannot parse group descriptor {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: &'static str, reason: String },
    #[error("{0} is a compact dual; its basis comes from the Cartan split of the source group")]
    DualDescriptor(String),
    #[error("basis element {label} is neither Hermitian nor skew-Hermitian")]
    NotCartanSplit { label: String },
    #[error("point has size {found}, descriptor {descriptor} needs {expected}")]
    SizeMismatch {
        descriptor: String,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The non-compact families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    GlR,
    SlR,
    UStar,
    SuStar,
    SpR,
    SoStar,
    Upq,
    Sopq,
    Sppq,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::GlR,
        Family::SlR,
        Family::UStar,
        Family::SuStar,
        Family::SpR,
        Family::SoStar,
        Family::Upq,
        Family::Sopq,
        Family::Sppq,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Family::GlR => "gl_r",
            Family::SlR => "sl_r",
            Family::UStar => "u_star",
            Family::SuStar => "su_star",
            Family::SpR => "sp_r",
            Family::SoStar => "so_star",
            Family::Upq => "u_pq",
            Family::Sopq => "so_pq",
            Family::Sppq => "sp_pq",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.key() == key)
    }

    pub fn has_signature(self) -> bool {
        matches!(self, Family::Upq | Family::Sopq | Family::Sppq)
    }

    /// Whether the ambient matrices are `2n x 2n` block matrices.
    pub fn is_doubled(self) -> bool {
        matches!(self, Family::UStar | Family::SuStar | Family::SpR | Family::SoStar | Family::Sppq)
    }

    /// Whether the defining relations include `det = 1` beyond what the
    /// exponential of the algebra already guarantees.
    pub fn has_unit_determinant(self) -> bool {
        matches!(self, Family::SlR | Family::SuStar | Family::SoStar | Family::Sopq)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Riemannian,
    /// The semi-Riemannian metric on the compact dual, `-1` on `k`, `+1` on `ip`.
    Dual,
}

/// The compact group a non-compact family is paired with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CompactFamily {
    DualSU,
    DualSO,
    DualSp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct GroupDescriptor {
    pub family: Family,
    /// `n` for the single-parameter families, `p + q` for the signature ones.
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub metric: Metric,
}

impl GroupDescriptor {
    pub fn new(family: Family, n: usize) -> Result<Self, GroupError> {
        if family.has_signature() {
            return Err(GroupError::InvalidParameters {
                family: family.key(),
                reason: "needs a signature (p, q); use GroupDescriptor::signature".into(),
            });
        }
        let min = if family == Family::SlR { 2 } else { 1 };
        if n < min {
            return Err(GroupError::InvalidParameters {
                family: family.key(),
                reason: format!("n must be at least {min}, got {n}"),
            });
        }
        Ok(Self { family, n, p: 0, q: 0, metric: Metric::Riemannian })
    }

    pub fn signature(family: Family, p: usize, q: usize) -> Result<Self, GroupError> {
        if !family.has_signature() {
            return Err(GroupError::InvalidParameters {
                family: family.key(),
                reason: "takes a single size parameter n".into(),
            });
        }
        if p < 1 || q < 1 {
            return Err(GroupError::InvalidParameters {
                family: family.key(),
                reason: format!("p and q must both be at least 1, got ({p}, {q})"),
            });
        }
        Ok(Self { family, n: p + q, p, q, metric: Metric::Riemannian })
    }

    pub fn gl_r(n: usize) -> Self {
        Self::new(Family::GlR, n).expect("valid gl_r size")
    }

    /// The compact dual of a Riemannian descriptor (identity on duals).
    pub fn dual(self) -> Self {
        Self { metric: Metric::Dual, ..self }
    }

    /// The non-compact group a dual descriptor was built from.
    pub fn source(self) -> Self {
        Self { metric: Metric::Riemannian, ..self }
    }

    pub fn is_dual(&self) -> bool {
        self.metric == Metric::Dual
    }

    pub fn matrix_size(&self) -> usize {
        if self.family.is_doubled() {
            2 * self.n
        } else {
            self.n
        }
    }

    /// Size of the square blocks addressed by block selectors.
    pub fn block_size(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::GlR => n * n,
            Family::SlR => n * n - 1,
            Family::UStar => 4 * n * n,
            Family::SuStar => 4 * n * n - 1,
            Family::SpR | Family::Sppq => n * (2 * n + 1),
            Family::SoStar => n * (2 * n - 1),
            Family::Upq => n * n,
            Family::Sopq => n * (n - 1) / 2,
        }
    }

    /// The compact group of the classical duality.
    ///
    /// `GL(n, R)` pairs with `U(n)`, which is reported under the `SU` label
    /// since the two differ only by the centre.
    pub fn compact_family(&self) -> CompactFamily {
        match self.family {
            Family::GlR | Family::SlR | Family::UStar | Family::SuStar | Family::Upq => CompactFamily::DualSU,
            Family::SoStar | Family::Sopq => CompactFamily::DualSO,
            Family::SpR | Family::Sppq => CompactFamily::DualSp,
        }
    }

    /// Human-readable name of the group, e.g. `SO(2,1)` or `Sp(3)` for a dual.
    pub fn group_name(&self) -> String {
        let (n, p, q) = (self.n, self.p, self.q);
        match self.metric {
            Metric::Riemannian => match self.family {
                Family::GlR => format!("GL({n},R)"),
                Family::SlR => format!("SL({n},R)"),
                Family::UStar => format!("U*({})", 2 * n),
                Family::SuStar => format!("SU*({})", 2 * n),
                Family::SpR => format!("Sp({n},R)"),
                Family::SoStar => format!("SO*({})", 2 * n),
                Family::Upq => format!("U({p},{q})"),
                Family::Sopq => format!("SO({p},{q})"),
                Family::Sppq => format!("Sp({p},{q})"),
            },
            Metric::Dual => match self.family {
                Family::GlR | Family::Upq => format!("U({n})"),
                Family::SlR => format!("SU({n})"),
                Family::UStar => format!("U({})", 2 * n),
                Family::SuStar => format!("SU({})", 2 * n),
                Family::SoStar => format!("SO({})", 2 * n),
                Family::Sopq => format!("SO({n})"),
                Family::SpR | Family::Sppq => format!("Sp({n})"),
            },
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dual() {
            f.write_str("dual:")?;
        }
        if self.family.has_signature() {
            write!(f, "{}:{},{}", self.family.key(), self.p, self.q)
        } else {
            write!(f, "{}:{}", self.family.key(), self.n)
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = GroupError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| GroupError::Parse { input: input.to_string(), reason: reason.to_string() };
        let trimmed = input.trim();
        let (dual, rest) = match trimmed.strip_prefix("dual:") {
            Some(rest) => (true, rest),
            None => (false, trimmed),
        };
        let (key, params) = rest.split_once(':').ok_or_else(|| err("expected <family>:<parameters>"))?;
        let family = Family::from_key(&key.to_ascii_lowercase()).ok_or_else(|| {
            err("unknown family; expected one of gl_r, sl_r, u_star, su_star, sp_r, so_star, u_pq, so_pq, sp_pq")
        })?;
        let numbers: Vec<usize> = params
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| err("parameters must be non-negative integers"))?;
        let d = match (family.has_signature(), numbers.as_slice()) {
            (true, [p, q]) => Self::signature(family, *p, *q)?,
            (false, [n]) => Self::new(family, *n)?,
            (true, _) => return Err(err("expected two parameters p,q")),
            (false, _) => return Err(err("expected one parameter n")),
        };
        Ok(if dual { d.dual() } else { d })
    }
}

impl From<GroupDescriptor> for String {
    fn from(d: GroupDescriptor) -> Self {
        d.to_string()
    }
}

impl TryFrom<String> for GroupDescriptor {
    type Error = GroupError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupPoint {
    pub descriptor: GroupDescriptor,
    pub matrix: ComplexMatrix,
}

impl GroupPoint {
    pub fn new(descriptor: GroupDescriptor, matrix: ComplexMatrix) -> Result<Self, GroupError> {
        let expected = descriptor.matrix_size();
        if !matrix.is_square() || matrix.rows() != expected {
            return Err(GroupError::SizeMismatch {
                descriptor: descriptor.to_string(),
                expected,
                found: matrix.rows(),
            });
        }
        Ok(Self { descriptor, matrix })
    }

    pub fn identity(descriptor: GroupDescriptor) -> Self {
        Self { descriptor, matrix: ComplexMatrix::identity(descriptor.matrix_size()) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round_trip() {
        for s in ["gl_r:3", "sp_r:2", "u_pq:2,1", "so_star:3", "sp_pq:1,2", "dual:so_pq:2,2", "su_star:1"] {
            let d: GroupDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
            let json = serde_json::to_string(&d).unwrap();
            assert_eq!(serde_json::from_str::<GroupDescriptor>(&json).unwrap(), d);
        }
    }

    #[test]
    fn descriptor_rejections() {
        for s in ["gl_r", "gl_r:x", "u_pq:3", "u_pq:0,2", "sp_r:1,1", "foo:2", "sl_r:1", "gl_r:0"] {
            assert!(s.parse::<GroupDescriptor>().is_err(), "{s}");
        }
    }

    #[test]
    fn sizes_and_dimensions() {
        let d: GroupDescriptor = "sp_pq:1,1".parse().unwrap();
        assert_eq!((d.matrix_size(), d.dimension()), (4, 10));
        let d: GroupDescriptor = "so_star:1".parse().unwrap();
        assert_eq!((d.matrix_size(), d.dimension()), (2, 1));
        assert_eq!("u_pq:2,1".parse::<GroupDescriptor>().unwrap().dimension(), 9);
        assert_eq!("dual:sp_r:2".parse::<GroupDescriptor>().unwrap().group_name(), "Sp(2)");
    }
}
