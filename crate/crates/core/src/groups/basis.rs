//! The orthonormal Lie-algebra bases, in a fixed documented order.
//!
//! Order within each family follows the display order of the standard
//! bases: the `X_rs` block, then `Y_rs`, then `D_t`, each in lexicographic
//! `(r, s)` / `t` order. Block elements `(A | B ; C | D) / sqrt 2` are
//! labelled `diag(A,D)` when `B = C = 0` and `offdiag(B,C)` when
//! `A = D = 0`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{algebra_residual, GroupDescriptor, GroupError, Family, Metric};
use crate::linalg::{diag_unit, ordered_pairs, skew_generator, sym_generator, ComplexMatrix, IndexSets, I};
use crate::report::{Check, VerificationReport};

/// Orthonormality and algebra-membership threshold for basis checks.
pub const BASIS_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignedBasis {
    pub elements: Vec<ComplexMatrix>,
    pub signs: Vec<i8>,
    pub labels: Vec<String>,
}

impl SignedBasis {
    fn new() -> Self {
        Self { elements: Vec::new(), signs: Vec::new(), labels: Vec::new() }
    }

    fn push(&mut self, label: String, element: ComplexMatrix) {
        self.labels.push(label);
        self.elements.push(element);
        self.signs.push(1);
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn sign(&self, k: usize) -> f64 {
        f64::from(self.signs[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &ComplexMatrix)> {
        self.signs.iter().map(|&s| f64::from(s)).zip(&self.elements)
    }

    /// `sum_k c_k Z_k`.
    pub fn combine(&self, coefficients: &[f64]) -> ComplexMatrix {
        let n = self.elements.first().map_or(0, ComplexMatrix::rows);
        let mut out = ComplexMatrix::zeros(n, n);
        for (c, z) in coefficients.iter().zip(&self.elements) {
            out = &out + &z.scale_real(*c);
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Gen {
    X(usize, usize),
    Y(usize, usize),
    D(usize),
    /// Normalised traceless diagonal `(D_1 + .. + D_k - k D_{k+1}) / sqrt(k(k+1))`.
    H(usize),
}

impl Gen {
    fn label(self) -> String {
        match self {
            Gen::X(r, s) => format!("X{r}{s}"),
            Gen::Y(r, s) => format!("Y{r}{s}"),
            Gen::D(t) => format!("D{t}"),
            Gen::H(k) => format!("H{k}"),
        }
    }

    fn matrix(self, n: usize) -> ComplexMatrix {
        match self {
            Gen::X(r, s) => sym_generator(n, r, s).expect("ordered pair"),
            Gen::Y(r, s) => skew_generator(n, r, s).expect("ordered pair"),
            Gen::D(t) => diag_unit(n, t).expect("index in range"),
            Gen::H(k) => helmert(n, k),
        }
    }
}

fn helmert(n: usize, k: usize) -> ComplexMatrix {
    let norm = ((k * (k + 1)) as f64).sqrt();
    let mut m = ComplexMatrix::zeros(n, n);
    for t in 0..k {
        m[(t, t)] = Complex64::new(1.0 / norm, 0.0);
    }
    m[(k, k)] = Complex64::new(-(k as f64) / norm, 0.0);
    m
}

fn xs(n: usize) -> Vec<Gen> {
    ordered_pairs(n).into_iter().map(|(r, s)| Gen::X(r, s)).collect()
}

fn ys(n: usize) -> Vec<Gen> {
    ordered_pairs(n).into_iter().map(|(r, s)| Gen::Y(r, s)).collect()
}

fn ds(n: usize) -> Vec<Gen> {
    (1..=n).map(Gen::D).collect()
}

fn hs(n: usize) -> Vec<Gen> {
    (1..n).map(Gen::H).collect()
}

/// How a generator `A` is placed into a `2n x 2n` block element.
#[derive(Clone, Copy)]
enum Placement {
    /// `(A | 0 ; 0 | A)`
    Same,
    /// `(A | 0 ; 0 | -A)`
    Opposite,
    /// `(iA | 0 ; 0 | -iA)`
    ImagOpposite,
    /// `(0 | A ; A | 0)`
    Swap,
    /// `(0 | A ; -A | 0)`
    SwapNeg,
    /// `(0 | iA ; iA | 0)`
    ImagSwap,
}

fn place(n: usize, g: Gen, how: Placement) -> (String, ComplexMatrix) {
    let a = g.matrix(n);
    let z = ComplexMatrix::zeros(n, n);
    let l = g.label();
    let ia = a.scale(I);
    let (label, m) = match how {
        Placement::Same => (format!("diag({l},{l})"), ComplexMatrix::from_blocks(&a, &z, &z, &a)),
        Placement::Opposite => (format!("diag({l},-{l})"), ComplexMatrix::from_blocks(&a, &z, &z, &(-&a))),
        Placement::ImagOpposite => (format!("diag(i{l},-i{l})"), ComplexMatrix::from_blocks(&ia, &z, &z, &(-&ia))),
        Placement::Swap => (format!("offdiag({l},{l})"), ComplexMatrix::from_blocks(&z, &a, &a, &z)),
        Placement::SwapNeg => (format!("offdiag({l},-{l})"), ComplexMatrix::from_blocks(&z, &a, &(-&a), &z)),
        Placement::ImagSwap => (format!("offdiag(i{l},i{l})"), ComplexMatrix::from_blocks(&z, &ia, &ia, &z)),
    };
    (label, m.expect("square blocks").scale_real(FRAC_1_SQRT_2))
}

fn push_placed(b: &mut SignedBasis, n: usize, gens: &[Gen], how: Placement) {
    for &g in gens {
        let (label, m) = place(n, g, how);
        b.push(label, m);
    }
}

fn push_plain(b: &mut SignedBasis, n: usize, gens: &[Gen], imag: bool) {
    for &g in gens {
        let m = g.matrix(n);
        if imag {
            b.push(format!("i{}", g.label()), m.scale(I));
        } else {
            b.push(g.label(), m);
        }
    }
}

/// The standard orthonormal basis of the Lie algebra of a Riemannian
/// descriptor, with all signs `+1`.
///
/// * `gl(n,R)`: `X_rs`, `Y_rs`, `D_t`.
/// * `sl(n,R)`: `X_rs`, `Y_rs`, then the `n - 1` Helmert diagonals `H_k`.
/// * `u*(2n)`: the `X, Y, D` lists placed as `diag(A,A)`, `diag(iA,-iA)`,
///   `offdiag(A,-A)`, `offdiag(iA,iA)`; `su*(2n)` uses `H_k` in the first
///   placement.
/// * `sp(n,R)`: `diag(Y,Y)`, `diag(X,-X)`, `diag(D,-D)`, `offdiag(X,X)`,
///   `offdiag(X,-X)`, `offdiag(D,D)`, `offdiag(D,-D)`.
/// * `so*(2n)`: `diag(Y,Y)`, `diag(iX,-iX)`, `diag(iD,-iD)`, `offdiag(Y,-Y)`,
///   `offdiag(iY,iY)`.
/// * `u(p,q)`: `iX`, `Y` over `Lambda1`; `X`, `iY` over `Lambda2`; `iD_t`.
/// * `so(p,q)`: `Y` over `Lambda1`, `X` over `Lambda2`.
/// * `sp(p,q)`: `diag(Y,Y)`, `diag(iX,-iX)` over `Lambda1`; `diag(X,X)`,
///   `diag(iY,-iY)` over `Lambda2`; `offdiag(X,-X)`, `offdiag(iX,iX)` over
///   `Lambda1`; `offdiag(Y,-Y)`, `offdiag(iY,iY)` over `Lambda2`; then
///   `diag(iD,-iD)`, `offdiag(D,-D)`, `offdiag(iD,iD)`.
pub fn algebra_basis(d: &GroupDescriptor) -> Result<SignedBasis, GroupError> {
    if d.metric == Metric::Dual {
        return Err(GroupError::DualDescriptor(d.to_string()));
    }
    let n = d.n;
    let mut b = SignedBasis::new();
    match d.family {
        Family::GlR => {
            push_plain(&mut b, n, &xs(n), false);
            push_plain(&mut b, n, &ys(n), false);
            push_plain(&mut b, n, &ds(n), false);
        }
        Family::SlR => {
            push_plain(&mut b, n, &xs(n), false);
            push_plain(&mut b, n, &ys(n), false);
            push_plain(&mut b, n, &hs(n), false);
        }
        Family::UStar | Family::SuStar => {
            let diag = if d.family == Family::UStar { ds(n) } else { hs(n) };
            let first: Vec<Gen> = xs(n).into_iter().chain(ys(n)).chain(diag).collect();
            let all: Vec<Gen> = xs(n).into_iter().chain(ys(n)).chain(ds(n)).collect();
            push_placed(&mut b, n, &first, Placement::Same);
            push_placed(&mut b, n, &all, Placement::ImagOpposite);
            push_placed(&mut b, n, &all, Placement::SwapNeg);
            push_placed(&mut b, n, &all, Placement::ImagSwap);
        }
        Family::SpR => {
            push_placed(&mut b, n, &ys(n), Placement::Same);
            push_placed(&mut b, n, &xs(n), Placement::Opposite);
            push_placed(&mut b, n, &ds(n), Placement::Opposite);
            push_placed(&mut b, n, &xs(n), Placement::Swap);
            push_placed(&mut b, n, &xs(n), Placement::SwapNeg);
            push_placed(&mut b, n, &ds(n), Placement::Swap);
            push_placed(&mut b, n, &ds(n), Placement::SwapNeg);
        }
        Family::SoStar => {
            push_placed(&mut b, n, &ys(n), Placement::Same);
            push_placed(&mut b, n, &xs(n), Placement::ImagOpposite);
            push_placed(&mut b, n, &ds(n), Placement::ImagOpposite);
            push_placed(&mut b, n, &ys(n), Placement::SwapNeg);
            push_placed(&mut b, n, &ys(n), Placement::ImagSwap);
        }
        Family::Upq | Family::Sopq | Family::Sppq => {
            let sets = IndexSets::new(d.p, d.q);
            let x1: Vec<Gen> = sets.lambda1.iter().map(|&(r, s)| Gen::X(r, s)).collect();
            let y1: Vec<Gen> = sets.lambda1.iter().map(|&(r, s)| Gen::Y(r, s)).collect();
            let x2: Vec<Gen> = sets.lambda2.iter().map(|&(r, s)| Gen::X(r, s)).collect();
            let y2: Vec<Gen> = sets.lambda2.iter().map(|&(r, s)| Gen::Y(r, s)).collect();
            match d.family {
                Family::Upq => {
                    push_plain(&mut b, n, &x1, true);
                    push_plain(&mut b, n, &y1, false);
                    push_plain(&mut b, n, &x2, false);
                    push_plain(&mut b, n, &y2, true);
                    push_plain(&mut b, n, &ds(n), true);
                }
                Family::Sopq => {
                    push_plain(&mut b, n, &y1, false);
                    push_plain(&mut b, n, &x2, false);
                }
                _ => {
                    push_placed(&mut b, n, &y1, Placement::Same);
                    push_placed(&mut b, n, &x1, Placement::ImagOpposite);
                    push_placed(&mut b, n, &x2, Placement::Same);
                    push_placed(&mut b, n, &y2, Placement::ImagOpposite);
                    push_placed(&mut b, n, &x1, Placement::SwapNeg);
                    push_placed(&mut b, n, &x1, Placement::ImagSwap);
                    push_placed(&mut b, n, &y2, Placement::SwapNeg);
                    push_placed(&mut b, n, &y2, Placement::ImagSwap);
                    push_placed(&mut b, n, &ds(n), Placement::ImagOpposite);
                    push_placed(&mut b, n, &ds(n), Placement::SwapNeg);
                    push_placed(&mut b, n, &ds(n), Placement::ImagSwap);
                }
            }
        }
    }
    Ok(b)
}

/// The basis used for calculus on `d`: the standard basis for Riemannian
/// descriptors and the Cartan-split dual basis for compact duals.
pub fn basis_for(d: &GroupDescriptor) -> Result<SignedBasis, GroupError> {
    match d.metric {
        Metric::Riemannian => algebra_basis(d),
        Metric::Dual => crate::duality::dual_basis(&d.source()),
    }
}

/// Gram matrix of the basis under the metric form of `d`.
///
/// Riemannian: `Re trace(Z W*)`. Dual: `Re trace(Z sigma(W))` with `sigma`
/// the conjugation fixing the non-compact real form.
pub(crate) fn gram(d: &GroupDescriptor, basis: &SignedBasis) -> Vec<Vec<f64>> {
    let partner: Vec<ComplexMatrix> = match d.metric {
        Metric::Riemannian => basis.elements.iter().map(ComplexMatrix::adjoint).collect(),
        Metric::Dual => basis.elements.iter().map(|w| crate::duality::real_form_conjugate(d, w)).collect(),
    };
    basis
        .elements
        .iter()
        .map(|z| {
            partner
                .iter()
                .map(|w| z.trace_of_product(w).expect("same size").re)
                .collect()
        })
        .collect()
}

/// Checks orthonormality against the signs and algebra membership of
/// every element.
pub fn verify_basis(d: &GroupDescriptor) -> Result<VerificationReport, GroupError> {
    let basis = basis_for(d)?;
    let mut report = VerificationReport::new("basis", d.to_string(), d.group_name());
    report.tolerance = BASIS_TOLERANCE;
    let g = gram(d, &basis);
    let mut max_off = 0.0f64;
    let mut max_diag = 0.0f64;
    for (a, row) in g.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            if a == b {
                max_diag = max_diag.max((v - basis.sign(a)).abs());
            } else {
                max_off = max_off.max(v.abs());
            }
        }
    }
    let mut max_alg = 0.0f64;
    for z in &basis.elements {
        max_alg = max_alg.max(algebra_residual(d, z)?);
    }
    report.push(Check::at_most("dimension_deficit", (d.dimension() as f64 - basis.len() as f64).abs(), 0.0));
    report.push(Check::at_most("orthogonality", max_off, BASIS_TOLERANCE));
    report.push(Check::at_most("normalization", max_diag, BASIS_TOLERANCE));
    report.push(Check::at_most("algebra_membership", max_alg, BASIS_TOLERANCE));
    report.note(format!("{} elements", basis.len()));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(s: &str) -> GroupDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn gl2_basis_matches_listing() {
        let b = algebra_basis(&desc("gl_r:2")).unwrap();
        assert_eq!(b.labels, vec!["X12", "Y12", "D1", "D2"]);
        assert!(b.signs.iter().all(|&s| s == 1));
    }

    #[test]
    fn so11_is_a_single_boost() {
        let b = algebra_basis(&desc("so_pq:1,1")).unwrap();
        assert_eq!(b.labels, vec!["X12"]);
        assert_eq!(b.elements[0], sym_generator(2, 1, 2).unwrap());
    }

    #[test]
    fn so_star_2_is_one_dimensional() {
        let b = algebra_basis(&desc("so_star:1")).unwrap();
        assert_eq!(b.len(), 1);
        let h = FRAC_1_SQRT_2;
        assert!((b.elements[0][(0, 0)] - Complex64::new(0.0, h)).norm() < 1e-16);
        assert!((b.elements[0][(1, 1)] - Complex64::new(0.0, -h)).norm() < 1e-16);
    }

    #[test]
    fn every_small_basis_verifies() {
        let mut descs = Vec::new();
        for n in 1..=8 {
            for fam in ["gl_r", "sl_r", "u_star", "su_star", "sp_r", "so_star"] {
                let d: Result<GroupDescriptor, _> = format!("{fam}:{n}").parse();
                if let Ok(d) = d {
                    if d.matrix_size() <= 8 {
                        descs.push(d);
                    }
                }
            }
            for p in 1..n {
                for fam in ["u_pq", "so_pq", "sp_pq"] {
                    let d: GroupDescriptor = format!("{fam}:{p},{}", n - p).parse().unwrap();
                    if d.matrix_size() <= 8 {
                        descs.push(d);
                    }
                }
            }
        }
        for d in descs {
            let r = verify_basis(&d).unwrap();
            assert!(r.pass, "{d}: {}", r.failure_summary());
        }
    }

    #[test]
    fn spec_dimension_examples() {
        assert_eq!(algebra_basis(&desc("gl_r:3")).unwrap().len(), 9);
        assert_eq!(algebra_basis(&desc("u_pq:2,1")).unwrap().len(), 9);
        assert_eq!(algebra_basis(&desc("sp_pq:1,1")).unwrap().len(), 10);
    }

    #[test]
    fn dual_descriptor_is_rejected() {
        assert!(matches!(algebra_basis(&desc("dual:gl_r:2")), Err(GroupError::DualDescriptor(_))));
    }
}
