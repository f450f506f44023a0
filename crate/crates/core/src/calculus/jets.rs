//! Exact second-order derivatives along left-invariant directions.
//!
//! Along `s -> g exp(sZ)` the matrix entries have the 2-jet
//! `(g, gZ, gZ^2)`; pushing these jets through a field's expression tree
//! with truncated Taylor arithmetic gives `phi`, `Z(phi)` and `Z^2(phi)`
//! at `g` with no discretisation error.

use std::cell::RefCell;
use std::collections::HashMap;
use std::ops::{Add, Mul};
use std::rc::Rc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::{block_offset, Node, ScalarField};
use super::CalculusError;
use crate::groups::{GroupPoint, SignedBasis};
use crate::linalg::{expm, ComplexMatrix, ONE, ZERO};

/// Zero-set guard on quotient denominators.
pub const DEFAULT_POLE_GUARD: f64 = 1e-6;

/// `(f(0), f'(0), f''(0))` of a function of one real variable.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Jet2 {
    pub value: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

impl Jet2 {
    pub fn constant(value: Complex64) -> Self {
        Self { value, d1: ZERO, d2: ZERO }
    }

    /// Truncated division; the caller guarantees a nonzero denominator.
    pub fn div(self, rhs: Jet2) -> Jet2 {
        let q = self.value / rhs.value;
        let q1 = (self.d1 - q * rhs.d1) / rhs.value;
        let q2 = (self.d2 - 2.0 * q1 * rhs.d1 - q * rhs.d2) / rhs.value;
        Jet2 { value: q, d1: q1, d2: q2 }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2 { value: self.value + rhs.value, d1: self.d1 + rhs.d1, d2: self.d2 + rhs.d2 }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            value: self.value * rhs.value,
            d1: self.d1 * rhs.value + self.value * rhs.d1,
            d2: self.d2 * rhs.value + 2.0 * self.d1 * rhs.d1 + self.value * rhs.d2,
        }
    }
}

/// Value and derivatives of one field along every basis direction.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldJets {
    pub value: Complex64,
    pub d1: Vec<Complex64>,
    pub d2: Vec<Complex64>,
}

impl FieldJets {
    fn constant(value: Complex64, k: usize) -> Self {
        Self { value, d1: vec![ZERO; k], d2: vec![ZERO; k] }
    }

    pub fn jet(&self, k: usize) -> Jet2 {
        Jet2 { value: self.value, d1: self.d1[k], d2: self.d2[k] }
    }

    fn mul_assign(&mut self, rhs: &FieldJets) {
        for k in 0..self.d1.len() {
            let j = self.jet(k) * rhs.jet(k);
            self.d1[k] = j.d1;
            self.d2[k] = j.d2;
        }
        self.value *= rhs.value;
    }
}

/// Entry jets of `g exp(sZ_k)` for every basis element, plus a memo of
/// field evaluations at this point. One instance per (point, basis).
pub struct PointJets {
    g: ComplexMatrix,
    gz: Vec<ComplexMatrix>,
    gzz: Vec<ComplexMatrix>,
    signs: Vec<f64>,
    pole_guard: f64,
    memo: RefCell<HashMap<usize, (ScalarField, Rc<FieldJets>)>>,
}

impl PointJets {
    pub fn new(g: &ComplexMatrix, basis: &SignedBasis) -> Result<Self, CalculusError> {
        let directions: Vec<(f64, ComplexMatrix)> = basis.iter().map(|(s, z)| (s, z.clone())).collect();
        Self::with_directions(g, directions)
    }

    pub fn at(point: &GroupPoint, basis: &SignedBasis) -> Result<Self, CalculusError> {
        Self::new(&point.matrix, basis)
    }

    /// Jets along arbitrary signed directions.
    pub fn with_directions(g: &ComplexMatrix, directions: Vec<(f64, ComplexMatrix)>) -> Result<Self, CalculusError> {
        let mut gz = Vec::with_capacity(directions.len());
        let mut gzz = Vec::with_capacity(directions.len());
        let mut signs = Vec::with_capacity(directions.len());
        for (s, z) in &directions {
            let a = g.try_mul(z)?;
            gzz.push(a.try_mul(z)?);
            gz.push(a);
            signs.push(*s);
        }
        Ok(Self {
            g: g.clone(),
            gz,
            gzz,
            signs,
            pole_guard: DEFAULT_POLE_GUARD,
            memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn with_pole_guard(mut self, pole_guard: f64) -> Self {
        self.pole_guard = pole_guard;
        self
    }

    pub fn directions(&self) -> usize {
        self.signs.len()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.g
    }

    pub fn eval(&self, f: &ScalarField) -> Result<Rc<FieldJets>, CalculusError> {
        if let Some((_, j)) = self.memo.borrow().get(&f.id()) {
            return Ok(Rc::clone(j));
        }
        let jets = Rc::new(self.compute(f)?);
        self.memo.borrow_mut().insert(f.id(), (f.clone(), Rc::clone(&jets)));
        Ok(jets)
    }

    fn compute(&self, f: &ScalarField) -> Result<FieldJets, CalculusError> {
        let k = self.directions();
        Ok(match f.node() {
            Node::TraceForm { terms } => {
                let mut out = FieldJets::constant(ZERO, k);
                for t in terms {
                    let (r0, c0) = block_offset(t, &self.g)?;
                    let m = t.coefficient.rows();
                    for i in 0..m {
                        for j in 0..m {
                            let a = t.coefficient[(i, j)];
                            if a == ZERO {
                                continue;
                            }
                            let (r, c) = (r0 + i, c0 + j);
                            out.value += a * self.g[(r, c)];
                            for d in 0..k {
                                out.d1[d] += a * self.gz[d][(r, c)];
                                out.d2[d] += a * self.gzz[d][(r, c)];
                            }
                        }
                    }
                }
                out
            }
            Node::Sum { children } => {
                let mut out = FieldJets::constant(ZERO, k);
                for c in children {
                    let cj = self.eval(c)?;
                    out.value += cj.value;
                    for d in 0..k {
                        out.d1[d] += cj.d1[d];
                        out.d2[d] += cj.d2[d];
                    }
                }
                out
            }
            Node::Product { children } => {
                let mut out = FieldJets::constant(ONE, k);
                for c in children {
                    out.mul_assign(&*self.eval(c)?);
                }
                out
            }
            Node::Scale { factor, child } => {
                let cj = self.eval(child)?;
                FieldJets {
                    value: factor * cj.value,
                    d1: cj.d1.iter().map(|v| factor * v).collect(),
                    d2: cj.d2.iter().map(|v| factor * v).collect(),
                }
            }
            Node::Quotient { numerator, denominator } => {
                let den = self.eval(denominator)?;
                if den.value.norm() <= self.pole_guard {
                    return Err(CalculusError::Pole { value: den.value.norm(), guard: self.pole_guard });
                }
                let num = self.eval(numerator)?;
                let mut out = FieldJets::constant(num.value / den.value, k);
                for d in 0..k {
                    let q = num.jet(d).div(den.jet(d));
                    out.d1[d] = q.d1;
                    out.d2[d] = q.d2;
                }
                out
            }
        })
    }

    /// `tau = sum_k eps_k Z_k^2(phi)`.
    pub fn tension_of(&self, f: &FieldJets) -> Complex64 {
        let mut acc = ZERO;
        for (s, v) in self.signs.iter().zip(&f.d2) {
            acc += s * v;
        }
        acc
    }

    /// `kappa = sum_k eps_k Z_k(phi) Z_k(psi)`; symmetric bit for bit.
    pub fn kappa_of(&self, f: &FieldJets, g: &FieldJets) -> Complex64 {
        let mut acc = ZERO;
        for ((s, a), b) in self.signs.iter().zip(&f.d1).zip(&g.d1) {
            acc += s * (a * b);
        }
        acc
    }

    pub fn tension(&self, f: &ScalarField) -> Result<Complex64, CalculusError> {
        Ok(self.tension_of(&*self.eval(f)?))
    }

    pub fn kappa(&self, f: &ScalarField, g: &ScalarField) -> Result<Complex64, CalculusError> {
        Ok(self.kappa_of(&*self.eval(f)?, &*self.eval(g)?))
    }

    pub fn value(&self, f: &ScalarField) -> Result<Complex64, CalculusError> {
        Ok(self.eval(f)?.value)
    }
}

/// The 2-jet of `s -> f(p exp(sZ))` at `s = 0`.
pub fn jet_eval(f: &ScalarField, p: &GroupPoint, z: &ComplexMatrix) -> Result<Jet2, CalculusError> {
    let jets = PointJets::with_directions(&p.matrix, vec![(1.0, z.clone())])?;
    Ok(jets.eval(f)?.jet(0))
}

pub fn tension(f: &ScalarField, p: &GroupPoint, basis: &SignedBasis) -> Result<Complex64, CalculusError> {
    PointJets::at(p, basis)?.tension(f)
}

pub fn kappa(f: &ScalarField, g: &ScalarField, p: &GroupPoint, basis: &SignedBasis) -> Result<Complex64, CalculusError> {
    PointJets::at(p, basis)?.kappa(f, g)
}

/// Central differences of `s -> f(p exp(sZ))` with step `h`, using fresh
/// exponentials. Truncation error is `O(h^2)` in both derivatives.
pub fn fd_oracle(f: &ScalarField, p: &GroupPoint, z: &ComplexMatrix, h: f64) -> Result<Jet2, CalculusError> {
    if !(h > 0.0) {
        return Err(CalculusError::Step(h));
    }
    let at = |s: f64| -> Result<Complex64, CalculusError> {
        let g = p.matrix.try_mul(&expm(&z.scale_real(s))?)?;
        f.eval(&g, DEFAULT_POLE_GUARD)
    };
    let (m, c, pl) = (at(-h)?, at(0.0)?, at(h)?);
    Ok(Jet2 { value: c, d1: (pl - m) / (2.0 * h), d2: (pl - 2.0 * c + m) / (h * h) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{coordinate_field, BlockSelector};
    use crate::groups::{algebra_basis, sample_point, GroupDescriptor};
    use crate::linalg::diag_unit;

    fn gl2() -> GroupDescriptor {
        "gl_r:2".parse().unwrap()
    }

    #[test]
    fn square_of_coordinate_along_d1() {
        let x11 = coordinate_field(&gl2(), BlockSelector::Full, 1, 1).unwrap();
        let f = x11.times(&x11);
        let p = GroupPoint::identity(gl2());
        let j = jet_eval(&f, &p, &diag_unit(2, 1).unwrap()).unwrap();
        assert_eq!(j.value, ONE);
        assert_eq!(j.d1, Complex64::new(2.0, 0.0));
        assert_eq!(j.d2, Complex64::new(4.0, 0.0));
        let fd = fd_oracle(&f, &p, &diag_unit(2, 1).unwrap(), 1e-4).unwrap();
        assert!((fd.d1 - j.d1).norm() < 1e-6 && (fd.d2 - j.d2).norm() < 1e-6);
    }

    #[test]
    fn constants_have_no_derivatives() {
        let c = ScalarField::constant(Complex64::new(3.0, -1.0));
        let d = gl2();
        let p = sample_point(&d, 3).unwrap();
        let b = algebra_basis(&d).unwrap();
        let j = jet_eval(&c, &p, &b.elements[0]).unwrap();
        assert_eq!((j.d1, j.d2), (ZERO, ZERO));
        assert_eq!(tension(&c, &p, &b).unwrap(), ZERO);
        let x = coordinate_field(&d, BlockSelector::Full, 1, 2).unwrap();
        assert_eq!(kappa(&x, &c, &p, &b).unwrap(), ZERO);
        let fd = fd_oracle(&c, &p, &b.elements[0], 1e-3).unwrap();
        assert!(fd.d1.norm() < 1e-12 && fd.d2.norm() < 1e-9);
    }

    #[test]
    fn first_derivative_of_coordinate_is_entry_of_gz() {
        let d: GroupDescriptor = "gl_r:3".parse().unwrap();
        let p = sample_point(&d, 11).unwrap();
        let b = algebra_basis(&d).unwrap();
        let x = coordinate_field(&d, BlockSelector::Full, 2, 3).unwrap();
        for z in &b.elements {
            let j = jet_eval(&x, &p, z).unwrap();
            assert_eq!(j.d1, (&p.matrix * z)[(1, 2)]);
        }
    }

    #[test]
    fn quotient_jets_match_finite_differences() {
        let d: GroupDescriptor = "so_pq:2,1".parse().unwrap();
        let p = sample_point(&d, 5).unwrap();
        let b = algebra_basis(&d).unwrap();
        let x = |i, j| coordinate_field(&d, BlockSelector::Full, i, j).unwrap();
        let num = ScalarField::product(vec![x(1, 1), x(2, 3), x(3, 2)]);
        let den = x(1, 1).plus(&x(3, 3).scale(Complex64::new(0.5, 1.0)));
        let f = ScalarField::quotient(num, den).unwrap();
        for z in &b.elements {
            let j = jet_eval(&f, &p, z).unwrap();
            let fd = fd_oracle(&f, &p, z, 1e-4).unwrap();
            assert!((j.d1 - fd.d1).norm() < 1e-6, "{j:?} {fd:?}");
            assert!((j.d2 - fd.d2).norm() < 1e-5, "{j:?} {fd:?}");
        }
    }

    #[test]
    fn bad_step_rejected() {
        let c = ScalarField::constant(ONE);
        let p = GroupPoint::identity(gl2());
        assert!(fd_oracle(&c, &p, &ComplexMatrix::identity(2), 0.0).is_err());
    }
}
