//! Compact duals: the Cartan-split basis with its mixed signs, and the
//! transport of (bi-)eigenfamilies with sign-flipped constants.

mod families;

use serde::{Deserialize, Serialize};

use crate::groups::{algebra_basis, Family, GroupDescriptor, GroupError, SignedBasis};
use crate::linalg::{signature_matrix, symplectic_form, ComplexMatrix, I};

pub use families::{dual_constants, dualize_family, verify_dual};

const SPLIT_TOLERANCE: f64 = 1e-12;

/// Basis of `u = k + ip` for the compact dual of `src`.
///
/// Each standard basis element of `src` is either skew-Hermitian (it lies
/// in `k` and is kept with sign `-1`) or Hermitian (it lies in `p` and is
/// replaced by `i` times itself with sign `+1`). Order is that of the
/// source basis.
pub fn dual_basis(src: &GroupDescriptor) -> Result<SignedBasis, GroupError> {
    let source = algebra_basis(&src.source())?;
    let mut out = SignedBasis { elements: Vec::new(), signs: Vec::new(), labels: Vec::new() };
    for (z, label) in source.elements.iter().zip(&source.labels) {
        let adj = z.adjoint();
        if z.max_abs_diff(&(-&adj)) <= SPLIT_TOLERANCE {
            out.elements.push(z.clone());
            out.signs.push(-1);
            out.labels.push(format!("k:{label}"));
        } else if z.max_abs_diff(&adj) <= SPLIT_TOLERANCE {
            out.elements.push(z.scale(I));
            out.signs.push(1);
            out.labels.push(format!("ip:{label}"));
        } else {
            return Err(GroupError::NotCartanSplit { label: label.clone() });
        }
    }
    Ok(out)
}

/// The antilinear involution of `gl(N, C)` whose fixed points are the
/// non-compact real form of `d`: complex conjugation for the real groups,
/// `J conj(W) J^{-1}` for the quaternionic ones and `-I_pq W^* I_pq` for
/// `U(p,q)`.
pub fn real_form_conjugate(d: &GroupDescriptor, w: &ComplexMatrix) -> ComplexMatrix {
    match d.family {
        Family::GlR | Family::SlR | Family::SpR | Family::Sopq => w.conj(),
        Family::UStar | Family::SuStar | Family::SoStar | Family::Sppq => {
            let j = symplectic_form(d.n).expect("n >= 1");
            &(&j * &w.conj()) * &(-&j)
        }
        Family::Upq => {
            let ipq = signature_matrix(d.p, d.q).expect("p + q >= 1");
            -&(&(&ipq * &w.adjoint()) * &ipq)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignEntry {
    pub label: String,
    /// Sign used by the dual operators.
    pub structural: i8,
    /// `Re trace(Z sigma(Z))`, the metric continued from the non-compact form.
    pub continued_form: f64,
    /// `Re trace(Z Z)`, the trace form taken literally on the compact algebra.
    pub literal_trace_form: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignDiagnostic {
    pub descriptor: String,
    pub entries: Vec<SignEntry>,
    /// The continued form reproduces the structural signs on every element.
    pub continued_form_agrees: bool,
    /// The literal trace form reproduces the structural signs on every element.
    pub literal_form_agrees: bool,
}

/// Compares the structural dual signs with the two candidate quadratic
/// forms. On the compact algebra every element is skew-Hermitian, so the
/// literal trace form is `-1` on all of them and only agrees on `k`.
pub fn sign_diagnostic(src: &GroupDescriptor) -> Result<SignDiagnostic, GroupError> {
    let d = src.dual();
    let basis = dual_basis(src)?;
    let entries: Vec<SignEntry> = basis
        .elements
        .iter()
        .zip(&basis.labels)
        .zip(&basis.signs)
        .map(|((z, label), &s)| SignEntry {
            label: label.clone(),
            structural: s,
            continued_form: z.trace_of_product(&real_form_conjugate(&d, z)).expect("square").re,
            literal_trace_form: z.trace_of_product(z).expect("square").re,
        })
        .collect();
    let agrees = |f: fn(&SignEntry) -> f64| entries.iter().all(|e| (f(e) - f64::from(e.structural)).abs() <= SPLIT_TOLERANCE);
    Ok(SignDiagnostic {
        descriptor: d.to_string(),
        continued_form_agrees: agrees(|e| e.continued_form),
        literal_form_agrees: agrees(|e| e.literal_trace_form),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::verify_basis;

    fn desc(s: &str) -> GroupDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn sl2_split() {
        let b = dual_basis(&desc("sl_r:2")).unwrap();
        assert_eq!(b.labels, vec!["ip:X12", "k:Y12", "ip:H1"]);
        assert_eq!(b.signs, vec![1, -1, 1]);
    }

    #[test]
    fn dual_elements_are_skew_hermitian_and_dimension_is_kept() {
        for s in ["gl_r:3", "sl_r:3", "u_star:2", "su_star:2", "sp_r:2", "so_star:3", "u_pq:2,1", "so_pq:2,2", "sp_pq:1,2"] {
            let d = desc(s);
            let b = dual_basis(&d).unwrap();
            assert_eq!(b.len(), algebra_basis(&d).unwrap().len());
            for z in &b.elements {
                assert!(z.max_abs_diff(&(-&z.adjoint())) < 1e-15);
            }
            let r = verify_basis(&d.dual()).unwrap();
            assert!(r.pass, "{s}: {}", r.failure_summary());
        }
    }

    #[test]
    fn diagnostic_reports_both_conventions() {
        let diag = sign_diagnostic(&desc("sp_r:2")).unwrap();
        assert!(diag.continued_form_agrees);
        assert!(!diag.literal_form_agrees);
        assert!(diag.entries.iter().all(|e| (e.literal_trace_form + 1.0).abs() < 1e-15));
    }
}
