//! Constructors for the families of each group and the registry used by
//! the command line.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{AnyFamily, BiEigenFamily, EigenFamily, FamilyError};
use crate::calculus::{BlockSelector, ScalarField, TraceTerm};
use crate::groups::{Family, GroupDescriptor};
use crate::linalg::{ComplexMatrix, I, ONE, ZERO};

use BlockSelector::{BottomLeft, BottomRight, Full, TopLeft, TopRight};

/// Bound on `|(u,u)|` and on entries that must vanish.
pub const ISOTROPY_TOLERANCE: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The bilinear (not Hermitian) product `sum_k u_k v_k`.
fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn is_isotropic(u: &[Complex64]) -> bool {
    dot(u, u).norm() <= ISOTROPY_TOLERANCE
}

/// `floor(n/2)` vectors `e_{2k-1} + i e_{2k}` spanning a maximal totally
/// isotropic subspace of `C^n`.
pub fn max_isotropic_subspace(n: usize) -> Result<Vec<Vec<Complex64>>, FamilyError> {
    if n < 2 {
        return Err(FamilyError::TooSmall { what: "an isotropic subspace", requirement: "n >= 2".into() });
    }
    Ok((0..n / 2)
        .map(|k| {
            let mut v = vec![ZERO; n];
            v[2 * k] = ONE;
            v[2 * k + 1] = I;
            v
        })
        .collect())
}

fn unit(n: usize, k: usize) -> Vec<Complex64> {
    let mut v = vec![ZERO; n];
    v[k] = ONE;
    v
}

/// `(u_i w_j)_{ij}`, i.e. `u^t w` for row vectors.
fn outer(u: &[Complex64], w: &[Complex64]) -> ComplexMatrix {
    let n = u.len();
    let entries = u.iter().flat_map(|a| w.iter().map(move |b| a * b)).collect();
    ComplexMatrix::from_row_major(n, w.len(), entries).expect("sizes agree")
}

fn field(terms: Vec<(BlockSelector, ComplexMatrix)>) -> Result<ScalarField, FamilyError> {
    let terms = terms.into_iter().map(|(block, coefficient)| TraceTerm { coefficient, block }).collect();
    Ok(ScalarField::trace_form(terms)?)
}

fn check_vector(what: &'static str, v: &[Complex64], n: usize) -> Result<(), FamilyError> {
    if v.len() != n {
        return Err(FamilyError::Length { what, expected: n, found: v.len() });
    }
    if v.iter().all(|z| z.norm() <= ISOTROPY_TOLERANCE) {
        return Err(FamilyError::ZeroVector { what });
    }
    Ok(())
}

fn check_support(what: &'static str, v: &[Complex64], range: std::ops::Range<usize>, block: &'static str) -> Result<(), FamilyError> {
    let outside = v.iter().enumerate().any(|(k, z)| !range.contains(&k) && z.norm() > ISOTROPY_TOLERANCE);
    if outside {
        return Err(FamilyError::Support { what, block });
    }
    Ok(())
}

fn provenance(theorem: Theorem) -> String {
    format!("theorem:{}", theorem.tag())
}

/// `phi_A(x) = trace(A x^t)` for `A` with rows in the span of `v_basis`.
/// Generators are `e_r v^t` for every row `r` and basis vector `v`.
pub fn family_glr(n: usize, v_basis: &[Vec<Complex64>]) -> Result<EigenFamily, FamilyError> {
    let d = GroupDescriptor::new(Family::GlR, n)?;
    if v_basis.is_empty() {
        return Err(FamilyError::Empty);
    }
    for (a, va) in v_basis.iter().enumerate() {
        check_vector("isotropic basis vector", va, n)?;
        for vb in &v_basis[a..] {
            let value = dot(va, vb).norm();
            if value > ISOTROPY_TOLERANCE {
                return Err(FamilyError::NotIsotropic { what: "span of the basis", value });
            }
        }
    }
    let mut gens = Vec::new();
    for r in 0..n {
        for v in v_basis {
            gens.push(field(vec![(Full, outer(&unit(n, r), v))])?);
        }
    }
    EigenFamily::new(d, provenance(Theorem::Gl), gens, 1.0, 0.0)
}

/// `trace(A z^t + xi A w^t)` over the matrix units `A = E_ij`.
pub fn family_ustar_xi(n: usize, xi: Complex64) -> Result<EigenFamily, FamilyError> {
    let d = GroupDescriptor::new(Family::UStar, n)?;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let a = outer(&unit(n, i), &unit(n, j));
            gens.push(field(vec![(TopLeft, a.clone()), (TopRight, a.scale(xi))])?);
        }
    }
    EigenFamily::new(d, provenance(Theorem::UStarXi), gens, -1.0, 0.0)
}

/// `trace(p a^t z^t)` and `trace(p b^t w^t)` over canonical `a`, `b`.
pub fn family_ustar_p(n: usize, p: &[Complex64]) -> Result<EigenFamily, FamilyError> {
    let d = GroupDescriptor::new(Family::UStar, n)?;
    check_vector("p", p, n)?;
    let mut gens = Vec::new();
    for block in [TopLeft, TopRight] {
        for j in 0..n {
            gens.push(field(vec![(block, outer(p, &unit(n, j)))])?);
        }
    }
    EigenFamily::new(d, provenance(Theorem::UStarP), gens, -1.0, 0.0)
}

fn spr_field(top: &ComplexMatrix, bottom: &ComplexMatrix) -> Result<ScalarField, FamilyError> {
    let mut terms = Vec::new();
    if top.max_abs() > 0.0 {
        terms.push((TopLeft, top.clone()));
        terms.push((TopRight, top.scale(I)));
    }
    if bottom.max_abs() > 0.0 {
        terms.push((BottomLeft, bottom.clone()));
        terms.push((BottomRight, bottom.scale(I)));
    }
    field(terms)
}

/// `phi_ab(g) = trace(a^t v (x+iy)^t + b^t v (z+iw)^t)` over canonical `a`, `b`.
pub fn family_spr_v(n: usize, v: &[Complex64]) -> Result<EigenFamily, FamilyError> {
    let d = GroupDescriptor::new(Family::SpR, n)?;
    check_vector("v", v, n)?;
    let zero = ComplexMatrix::zeros(n, n);
    let mut gens = Vec::new();
    for k in 0..n {
        gens.push(spr_field(&outer(&unit(n, k), v), &zero)?);
    }
    for k in 0..n {
        gens.push(spr_field(&zero, &outer(&unit(n, k), v))?);
    }
    EigenFamily::new(d, provenance(Theorem::SpRV), gens, 0.5, -0.5)
}

/// `phi_v(g) = trace(a^t v (x+iy)^t + b^t v (z+iw)^t)` over canonical `v`.
pub fn family_spr_ab(n: usize, a: &[Complex64], b: &[Complex64]) -> Result<EigenFamily, FamilyError> {
    let d = GroupDescriptor::new(Family::SpR, n)?;
    check_vector("a", a, n)?;
    check_vector("b", b, n)?;
    let gens = (0..n)
        .map(|k| spr_field(&outer(a, &unit(n, k)), &outer(b, &unit(n, k))))
        .collect::<Result<_, _>>()?;
    EigenFamily::new(d, provenance(Theorem::SpRAb), gens, 0.5, -0.5)
}

/// Largest asymmetry of `AB^t`, `AD^t - BC^t`, `CD^t` over all pairs
/// `(A,B)`, `(C,D)` of `m`; the `U*` construction needs all three symmetric.
pub fn ustar_symmetry_defect(m: &[(ComplexMatrix, ComplexMatrix)]) -> Result<f64, FamilyError> {
    let asym = |x: ComplexMatrix| x.max_abs_diff(&x.transpose());
    let mut worst = 0.0f64;
    for (a, b) in m {
        for (cc, dd) in m {
            let ab = a.try_mul(&b.transpose()).map_err(crate::groups::GroupError::from)?;
            let cd = cc.try_mul(&dd.transpose()).map_err(crate::groups::GroupError::from)?;
            let mixed = &(a * &dd.transpose()) - &(b * &cc.transpose());
            worst = worst.max(asym(ab)).max(asym(mixed)).max(asym(cd));
        }
    }
    Ok(worst)
}

/// `E1(v) = {trace(v^t a z^t)}`, `E2(v) = {trace(v^t c w^t)}`.
pub fn bifamily_sostar(n: usize, v: &[Complex64]) -> Result<BiEigenFamily, FamilyError> {
    let d = GroupDescriptor::new(Family::SoStar, n)?;
    if n < 2 {
        return Err(FamilyError::TooSmall { what: "the w block of SO*(2n)", requirement: "n >= 2".into() });
    }
    check_vector("v", v, n)?;
    let part = |block| -> Result<EigenFamily, FamilyError> {
        let gens = (0..n).map(|k| field(vec![(block, outer(v, &unit(n, k)))])).collect::<Result<_, _>>()?;
        EigenFamily::new(d, provenance(Theorem::SoStarV), gens, -0.5, -0.5)
    };
    Ok(BiEigenFamily {
        provenance: provenance(Theorem::SoStarV),
        e1: part(TopLeft)?,
        e2: part(TopRight)?,
        mu_cross: Some(c(0.5, 0.0)),
    })
}

/// `E1(a) = {trace(u^t a z^t)}`, `E2(a) = {trace(v^t a w^t)}`; no cross
/// relation is part of the construction.
pub fn family_sostar_a(n: usize, a: &[Complex64]) -> Result<(EigenFamily, EigenFamily), FamilyError> {
    let d = GroupDescriptor::new(Family::SoStar, n)?;
    if n < 2 {
        return Err(FamilyError::TooSmall { what: "the w block of SO*(2n)", requirement: "n >= 2".into() });
    }
    check_vector("a", a, n)?;
    let part = |block| -> Result<EigenFamily, FamilyError> {
        let gens = (0..n).map(|k| field(vec![(block, outer(&unit(n, k), a))])).collect::<Result<_, _>>()?;
        EigenFamily::new(d, provenance(Theorem::SoStarA), gens, -0.5, -0.5)
    };
    Ok((part(TopLeft)?, part(TopRight)?))
}

/// `E1(v)`, `E2(v)` of `trace(v^t a z^t)` with `a` in the first resp.
/// second coordinate block.
pub fn bifamily_upq(p: usize, q: usize, v: &[Complex64]) -> Result<BiEigenFamily, FamilyError> {
    let d = GroupDescriptor::signature(Family::Upq, p, q)?;
    let n = p + q;
    check_vector("v", v, n)?;
    let part = |range: std::ops::Range<usize>, lambda: f64| -> Result<EigenFamily, FamilyError> {
        let gens = range.map(|k| field(vec![(Full, outer(v, &unit(n, k)))])).collect::<Result<_, _>>()?;
        EigenFamily::new(d, provenance(Theorem::UpqV), gens, lambda, -1.0)
    };
    let pq = p as f64 - q as f64;
    Ok(BiEigenFamily {
        provenance: provenance(Theorem::UpqV),
        e1: part(0..p, -pq)?,
        e2: part(p..n, pq)?,
        mu_cross: Some(ONE),
    })
}

/// `E1(u) = {trace(a^t u z^t)}`, `E2(v) = {trace(a^t v z^t)}` with `u`
/// supported on the first `p` coordinates and `v` on the last `q`.
pub fn family_upq_uv(p: usize, q: usize, u: &[Complex64], v: &[Complex64]) -> Result<(EigenFamily, EigenFamily), FamilyError> {
    let d = GroupDescriptor::signature(Family::Upq, p, q)?;
    let n = p + q;
    check_vector("u", u, n)?;
    check_vector("v", v, n)?;
    check_support("u", u, 0..p, "the first p coordinates")?;
    check_support("v", v, p..n, "the last q coordinates")?;
    let part = |w: &[Complex64], lambda: f64| -> Result<EigenFamily, FamilyError> {
        let gens = (0..n).map(|k| field(vec![(Full, outer(&unit(n, k), w))])).collect::<Result<_, _>>()?;
        EigenFamily::new(d, provenance(Theorem::UpqUv), gens, lambda, -1.0)
    };
    let pq = p as f64 - q as f64;
    Ok((part(u, -pq)?, part(v, pq)?))
}

fn embed(v: &[Complex64], offset: usize, n: usize) -> Vec<Complex64> {
    let mut out = vec![ZERO; n];
    out[offset..offset + v.len()].copy_from_slice(v);
    out
}

/// `E_{V1}(u)`, `E_{V2}(u)` of `trace(u^t a x^t)` with `a` in maximal
/// isotropic subspaces of the two coordinate blocks.
pub fn bifamily_sopq(p: usize, q: usize, u: &[Complex64]) -> Result<BiEigenFamily, FamilyError> {
    let d = GroupDescriptor::signature(Family::Sopq, p, q)?;
    if p < 2 || q < 2 {
        return Err(FamilyError::TooSmall { what: "isotropic vectors in both blocks", requirement: "p >= 2 and q >= 2".into() });
    }
    let n = p + q;
    check_vector("u", u, n)?;
    let part = |basis: Vec<Vec<Complex64>>, offset: usize, lambda: f64| -> Result<EigenFamily, FamilyError> {
        let gens = basis
            .iter()
            .map(|a| field(vec![(Full, outer(u, &embed(a, offset, n)))]))
            .collect::<Result<_, _>>()?;
        EigenFamily::new(d, provenance(Theorem::SopqU), gens, lambda, -0.5)
    };
    let pq = p as f64 - q as f64;
    Ok(BiEigenFamily {
        provenance: provenance(Theorem::SopqU),
        e1: part(max_isotropic_subspace(p)?, 0, 0.5 * (1.0 - pq))?,
        e2: part(max_isotropic_subspace(q)?, p, 0.5 * (1.0 + pq))?,
        mu_cross: Some(c(0.5, 0.0)),
    })
}

/// `E1(u) = {trace(a^t u x^t)}`, `E2(v) = {trace(a^t v x^t)}` for isotropic
/// `u`, `v` supported on the first resp. last block.
pub fn family_sopq_uv(p: usize, q: usize, u: &[Complex64], v: &[Complex64]) -> Result<(EigenFamily, EigenFamily), FamilyError> {
    let d = GroupDescriptor::signature(Family::Sopq, p, q)?;
    let n = p + q;
    check_vector("u", u, n)?;
    check_vector("v", v, n)?;
    check_support("u", u, 0..p, "the first p coordinates")?;
    check_support("v", v, p..n, "the last q coordinates")?;
    for (what, w) in [("u", u), ("v", v)] {
        if !is_isotropic(w) {
            return Err(FamilyError::NotIsotropic { what, value: dot(w, w).norm() });
        }
    }
    let part = |w: &[Complex64], lambda: f64| -> Result<EigenFamily, FamilyError> {
        let gens = (0..n).map(|k| field(vec![(Full, outer(&unit(n, k), w))])).collect::<Result<_, _>>()?;
        EigenFamily::new(d, provenance(Theorem::SopqUv), gens, lambda, -0.5)
    };
    let pq = p as f64 - q as f64;
    Ok((part(u, 0.5 * (1.0 - pq))?, part(v, 0.5 * (1.0 + pq))?))
}

/// `E1(v)`, `E2(v)` of `trace(v^t a z^t + v^t b w^t)` with `a`, `b` in the
/// first resp. second coordinate block.
pub fn bifamily_sppq(p: usize, q: usize, v: &[Complex64]) -> Result<BiEigenFamily, FamilyError> {
    let d = GroupDescriptor::signature(Family::Sppq, p, q)?;
    let n = p + q;
    check_vector("v", v, n)?;
    let part = |range: std::ops::Range<usize>, lambda: f64| -> Result<EigenFamily, FamilyError> {
        let mut gens = Vec::new();
        for block in [TopLeft, TopRight] {
            for k in range.clone() {
                gens.push(field(vec![(block, outer(v, &unit(n, k)))])?);
            }
        }
        EigenFamily::new(d, provenance(Theorem::SppqV), gens, lambda, -0.5)
    };
    let qp = q as f64 - p as f64;
    Ok(BiEigenFamily {
        provenance: provenance(Theorem::SppqV),
        e1: part(0..p, qp - 0.5)?,
        e2: part(p..n, -qp - 0.5)?,
        mu_cross: Some(c(0.5, 0.0)),
    })
}

/// The constructions, by the number they are usually cited under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Theorem {
    Gl,
    UStarXi,
    UStarP,
    SpRV,
    SpRAb,
    SoStarV,
    SoStarA,
    UpqV,
    UpqUv,
    SopqU,
    SopqUv,
    SppqV,
}

impl Theorem {
    pub const ALL: [Theorem; 12] = [
        Theorem::Gl,
        Theorem::UStarXi,
        Theorem::UStarP,
        Theorem::SpRV,
        Theorem::SpRAb,
        Theorem::SoStarV,
        Theorem::SoStarA,
        Theorem::UpqV,
        Theorem::UpqUv,
        Theorem::SopqU,
        Theorem::SopqUv,
        Theorem::SppqV,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Theorem::Gl => "4.2",
            Theorem::UStarXi => "5.3",
            Theorem::UStarP => "5.4",
            Theorem::SpRV => "6.2",
            Theorem::SpRAb => "6.3",
            Theorem::SoStarV => "8.2",
            Theorem::SoStarA => "8.3",
            Theorem::UpqV => "10.2",
            Theorem::UpqUv => "10.3",
            Theorem::SopqU => "11.2",
            Theorem::SopqUv => "11.3",
            Theorem::SppqV => "12.2",
        }
    }

    /// The group the construction lives on.
    pub fn family(self) -> Family {
        match self {
            Theorem::Gl => Family::GlR,
            Theorem::UStarXi | Theorem::UStarP => Family::UStar,
            Theorem::SpRV | Theorem::SpRAb => Family::SpR,
            Theorem::SoStarV | Theorem::SoStarA => Family::SoStar,
            Theorem::UpqV | Theorem::UpqUv => Family::Upq,
            Theorem::SopqU | Theorem::SopqUv => Family::Sopq,
            Theorem::SppqV => Family::Sppq,
        }
    }

    /// Whether the construction yields two families with a stated cross constant.
    pub fn is_bi(self) -> bool {
        matches!(self, Theorem::SoStarV | Theorem::UpqV | Theorem::SopqU | Theorem::SppqV)
    }

    /// Whether the construction yields two families with no stated cross relation.
    pub fn is_pair(self) -> bool {
        matches!(self, Theorem::SoStarA | Theorem::UpqUv | Theorem::SopqUv)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Theorem {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Self::ALL.into_iter().find(|t| t.tag() == s).ok_or_else(|| FamilyError::UnknownTheorem(s.to_string()))
    }
}

impl From<Theorem> for String {
    fn from(t: Theorem) -> Self {
        t.tag().to_string()
    }
}

impl TryFrom<String> for Theorem {
    type Error = FamilyError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Optional parameters of a construction; missing ones get defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub v: Option<Vec<Complex64>>,
    pub u: Option<Vec<Complex64>>,
    pub a: Option<Vec<Complex64>>,
    pub b: Option<Vec<Complex64>>,
    pub xi: Option<Complex64>,
    /// Basis of an isotropic subspace, for the general linear construction.
    pub isotropic_basis: Option<Vec<Vec<Complex64>>>,
}

/// A generic vector with no zero entries and no special relations.
pub fn default_vector(n: usize) -> Vec<Complex64> {
    (0..n).map(|k| c(1.0 - 0.25 * k as f64, 0.5 + 0.3 * k as f64)).collect()
}

fn default_isotropic(len: usize, offset: usize, n: usize) -> Result<Vec<Complex64>, FamilyError> {
    let v = max_isotropic_subspace(len)?.remove(0);
    Ok(embed(&v, offset, n))
}

/// Builds the family of `theorem` on `d`.
///
/// The general linear and `U*` constructions also accept the
/// unit-determinant groups, where they are restricted with shifted
/// constants. Pairs without a stated cross relation come back as a
/// bi-family with `mu_cross = None`.
pub fn construct(d: &GroupDescriptor, theorem: Theorem, params: &FamilyParams) -> Result<AnyFamily, FamilyError> {
    let restricted = match (theorem.family(), d.family) {
        (Family::GlR, Family::SlR) | (Family::UStar, Family::SuStar) => true,
        (f, g) if f == g => false,
        _ => {
            return Err(FamilyError::WrongGroup {
                theorem: theorem.tag().into(),
                expected: theorem.family().key().into(),
                descriptor: d.to_string(),
            })
        }
    };
    let (n, p, q) = (d.n, d.p, d.q);
    let vec_or = |x: &Option<Vec<Complex64>>, len: usize| x.clone().unwrap_or_else(|| default_vector(len));
    let pair = |(e1, e2): (EigenFamily, EigenFamily)| {
        AnyFamily::Bi(BiEigenFamily { provenance: e1.provenance.clone(), e1, e2, mu_cross: None })
    };
    let family = match theorem {
        Theorem::Gl => {
            let basis = match &params.isotropic_basis {
                Some(b) => b.clone(),
                None => max_isotropic_subspace(n)?,
            };
            AnyFamily::Eigen(family_glr(n, &basis)?)
        }
        Theorem::UStarXi => AnyFamily::Eigen(family_ustar_xi(n, params.xi.unwrap_or(c(0.5, 0.25)))?),
        Theorem::UStarP => AnyFamily::Eigen(family_ustar_p(n, &vec_or(&params.v, n))?),
        Theorem::SpRV => AnyFamily::Eigen(family_spr_v(n, &vec_or(&params.v, n))?),
        Theorem::SpRAb => AnyFamily::Eigen(family_spr_ab(n, &vec_or(&params.a, n), &vec_or(&params.b, n))?),
        Theorem::SoStarV => AnyFamily::Bi(bifamily_sostar(n, &vec_or(&params.v, n))?),
        Theorem::SoStarA => pair(family_sostar_a(n, &vec_or(&params.a, n))?),
        Theorem::UpqV => AnyFamily::Bi(bifamily_upq(p, q, &vec_or(&params.v, n))?),
        Theorem::UpqUv => {
            let u = params.u.clone().unwrap_or_else(|| embed(&default_vector(p), 0, n));
            let v = params.v.clone().unwrap_or_else(|| embed(&default_vector(q), p, n));
            pair(family_upq_uv(p, q, &u, &v)?)
        }
        Theorem::SopqU => AnyFamily::Bi(bifamily_sopq(p, q, &vec_or(&params.u, n))?),
        Theorem::SopqUv => {
            let u = match &params.u {
                Some(u) => u.clone(),
                None => default_isotropic(p, 0, n)?,
            };
            let v = match &params.v {
                Some(v) => v.clone(),
                None => default_isotropic(q, p, n)?,
            };
            pair(family_sopq_uv(p, q, &u, &v)?)
        }
        Theorem::SppqV => AnyFamily::Bi(bifamily_sppq(p, q, &vec_or(&params.v, n))?),
    };
    let family = match family {
        AnyFamily::Eigen(f) if restricted => AnyFamily::Eigen(f.restrict_to_det_one()?),
        other => other,
    };
    Ok(if d.is_dual() { crate::duality::dualize_family(&family) } else { family })
}

/// Parses `"1, i, 0.5-2i, -3e-1+i"` into complex numbers.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, FamilyError> {
    s.split(',').map(parse_complex).collect()
}

fn parse_complex(token: &str) -> Result<Complex64, FamilyError> {
    let t: String = token.chars().filter(|ch| !ch.is_whitespace()).collect();
    let err = || FamilyError::ComplexSyntax(token.trim().to_string());
    if t.is_empty() {
        return Err(err());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse::<f64>().map(|re| c(re, 0.0)).map_err(|_| err());
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |s: &str| -> Result<f64, FamilyError> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().map_err(|_| err()),
        }
    };
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| err())?;
            Ok(c(re, imag(&body[k..])?))
        }
        None => Ok(c(0.0, imag(body)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupPoint;

    #[test]
    fn isotropic_subspaces() {
        assert_eq!(max_isotropic_subspace(2).unwrap(), vec![vec![ONE, I]]);
        let v4 = max_isotropic_subspace(4).unwrap();
        assert_eq!(v4.len(), 2);
        for a in &v4 {
            for b in &v4 {
                assert_eq!(dot(a, b), ZERO);
            }
        }
        assert_eq!(max_isotropic_subspace(3).unwrap(), vec![vec![ONE, I, ZERO]]);
        assert!(max_isotropic_subspace(1).is_err());
    }

    #[test]
    fn complex_lists() {
        let v = parse_complex_list("1, i, -i, 0.5-2i, -3e-1+1e-1i, 2.5").unwrap();
        assert_eq!(v, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(0.5, -2.0), c(-0.3, 0.1), c(2.5, 0.0)]);
        assert!(parse_complex_list("1,,2").is_err());
        assert!(parse_complex_list("x").is_err());
    }

    #[test]
    fn glr_example_generator() {
        let f = family_glr(2, &max_isotropic_subspace(2).unwrap()).unwrap();
        assert_eq!(f.len(), 2);
        let g = ComplexMatrix::from_real_rows(&[&[2.0, 3.0], &[5.0, 7.0]]).unwrap();
        assert_eq!(f.generators[0].eval(&g, 1e-6).unwrap(), c(2.0, 3.0));
        assert_eq!(f.generators[1].eval(&g, 1e-6).unwrap(), c(5.0, 7.0));
    }

    #[test]
    fn rejections() {
        assert!(matches!(family_ustar_p(2, &[ZERO, ZERO]), Err(FamilyError::ZeroVector { .. })));
        assert!(matches!(family_glr(2, &[vec![ONE, ONE]]), Err(FamilyError::NotIsotropic { .. })));
        assert!(matches!(bifamily_sopq(1, 2, &default_vector(3)), Err(FamilyError::TooSmall { .. })));
        let u = embed(&[ONE, I], 0, 4);
        let bad_v = embed(&[ONE, ONE], 2, 4);
        assert!(matches!(family_sopq_uv(2, 2, &u, &bad_v), Err(FamilyError::NotIsotropic { .. })));
        assert!(matches!(family_upq_uv(2, 1, &default_vector(3), &embed(&[ONE], 2, 3)), Err(FamilyError::Support { .. })));
        let d: GroupDescriptor = "sp_r:2".parse().unwrap();
        assert!(matches!(construct(&d, Theorem::Gl, &FamilyParams::default()), Err(FamilyError::WrongGroup { .. })));
        assert!("9.9".parse::<Theorem>().is_err());
    }

    #[test]
    fn identity_values() {
        let f = family_spr_ab(2, &[ONE, c(2.0, 0.0)], &[ONE, ONE]).unwrap();
        let id = GroupPoint::identity(f.descriptor).matrix;
        // x = w = I at the identity, so phi_v(I) = a_k + i b_k for v = e_k.
        assert_eq!(f.generators[1].eval(&id, 1e-6).unwrap(), c(2.0, 1.0));
        let b = bifamily_sostar(2, &default_vector(2)).unwrap();
        let id = GroupPoint::identity(b.descriptor()).matrix;
        assert!(b.e2.generators.iter().all(|g| g.eval(&id, 1e-6).unwrap() == ZERO));
    }

    #[test]
    fn restriction_shifts_constants() {
        let d: GroupDescriptor = "sl_r:3".parse().unwrap();
        let AnyFamily::Eigen(f) = construct(&d, Theorem::Gl, &FamilyParams::default()).unwrap() else { panic!() };
        assert_eq!(f.descriptor, d);
        assert!((f.lambda - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((f.mu - c(-1.0 / 3.0, 0.0)).norm() < 1e-15);
    }
}
