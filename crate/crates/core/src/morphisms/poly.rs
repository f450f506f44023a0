//! Homogeneous and bi-homogeneous polynomials in the members of a family.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::MorphismError;
use crate::calculus::ScalarField;
use crate::linalg::ONE;

/// `sum c_e z^e` over exponent vectors `e` of length `vars1 + vars2`; the
/// first `vars1` variables are fed by the first family, the rest by the second.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "PolyRepr", try_from = "PolyRepr")]
pub struct MultiPoly {
    vars1: usize,
    vars2: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars1: usize,
    vars2: usize,
    terms: Vec<(Vec<u32>, Complex64)>,
}

impl From<MultiPoly> for PolyRepr {
    fn from(p: MultiPoly) -> Self {
        Self { vars1: p.vars1, vars2: p.vars2, terms: p.terms.into_iter().collect() }
    }
}

impl TryFrom<PolyRepr> for MultiPoly {
    type Error = MorphismError;

    fn try_from(r: PolyRepr) -> Result<Self, Self::Error> {
        MultiPoly::new(r.vars1, r.vars2, r.terms)
    }
}

impl MultiPoly {
    /// Merges repeated exponents and drops zero coefficients; the result
    /// must be non-empty and (bi-)homogeneous.
    pub fn new(vars1: usize, vars2: usize, terms: impl IntoIterator<Item = (Vec<u32>, Complex64)>) -> Result<Self, MorphismError> {
        let mut map: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != vars1 + vars2 {
                return Err(MorphismError::ExponentLength { expected: vars1 + vars2, found: e.len() });
            }
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        let poly = Self { vars1, vars2, terms: map };
        let mut degrees = poly.terms.keys().map(|e| poly.split_degree(e));
        let first = degrees.next().ok_or(MorphismError::EmptyPolynomial)?;
        if degrees.any(|d| d != first) {
            return Err(MorphismError::NotHomogeneous);
        }
        Ok(poly)
    }

    pub fn monomial(vars1: usize, vars2: usize, exponents: Vec<u32>) -> Result<Self, MorphismError> {
        Self::new(vars1, vars2, [(exponents, ONE)])
    }

    /// The single variable `z_k`.
    pub fn variable(vars1: usize, vars2: usize, k: usize) -> Result<Self, MorphismError> {
        let mut e = vec![0; vars1 + vars2];
        if k >= e.len() {
            return Err(MorphismError::ExponentLength { expected: vars1 + vars2, found: k + 1 });
        }
        e[k] = 1;
        Self::monomial(vars1, vars2, e)
    }

    fn split_degree(&self, e: &[u32]) -> (u32, u32) {
        (e[..self.vars1].iter().sum(), e[self.vars1..].iter().sum())
    }

    pub fn vars(&self) -> (usize, usize) {
        (self.vars1, self.vars2)
    }

    /// Degree in each block of variables.
    pub fn bidegree(&self) -> (u32, u32) {
        let e = self.terms.keys().next().expect("non-empty by construction");
        self.split_degree(e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Complex64)> {
        self.terms.iter()
    }

    /// Whether `self` and `other` are linearly independent as coefficient vectors.
    pub fn independent_of(&self, other: &MultiPoly) -> bool {
        let mut inner = Complex64::new(0.0, 0.0);
        for (e, a) in &self.terms {
            if let Some(b) = other.terms.get(e) {
                inner += a.conj() * b;
            }
        }
        let na: f64 = self.terms.values().map(|c| c.norm_sqr()).sum();
        let nb: f64 = other.terms.values().map(|c| c.norm_sqr()).sum();
        inner.norm_sqr() < (1.0 - 1e-12) * na * nb
    }

    /// Substitutes `vars[k]` for the k-th variable.
    pub fn compose(&self, vars: &[ScalarField]) -> Result<ScalarField, MorphismError> {
        if vars.len() != self.vars1 + self.vars2 {
            return Err(MorphismError::Arity { expected: self.vars1 + self.vars2, found: vars.len() });
        }
        let mut summands = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let factors: Vec<ScalarField> = e
                .iter()
                .enumerate()
                .flat_map(|(k, &power)| std::iter::repeat_n(vars[k].clone(), power as usize))
                .collect();
            let monomial = if factors.len() == 1 { factors[0].clone() } else { ScalarField::product(factors) };
            summands.push(if *c == ONE { monomial } else { monomial.scale(*c) });
        }
        Ok(if summands.len() == 1 { summands.remove(0) } else { ScalarField::sum(summands) })
    }

    /// A random polynomial of the given bi-degree with `terms` monomials
    /// (fewer if they coincide) and coefficients in the unit square.
    pub fn random(vars1: usize, vars2: usize, degree: (u32, u32), terms: usize, rng: &mut ChaCha8Rng) -> Result<Self, MorphismError> {
        if (degree.0 > 0 && vars1 == 0) || (degree.1 > 0 && vars2 == 0) {
            return Err(MorphismError::Arity { expected: 1, found: 0 });
        }
        let mut out = Vec::with_capacity(terms);
        for _ in 0..terms.max(1) {
            let mut e = vec![0u32; vars1 + vars2];
            for _ in 0..degree.0 {
                e[rng.random_range(0..vars1)] += 1;
            }
            for _ in 0..degree.1 {
                e[vars1 + rng.random_range(0..vars2)] += 1;
            }
            let c = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
            out.push((e, c));
        }
        Self::new(vars1, vars2, out)
    }

    /// A linearly independent pair of random polynomials, deterministic in `seed`.
    pub fn random_pair(vars1: usize, vars2: usize, degree: (u32, u32), seed: u64) -> Result<(Self, Self), MorphismError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let p = Self::random(vars1, vars2, degree, 3, &mut rng)?;
            let q = Self::random(vars1, vars2, degree, 3, &mut rng)?;
            if p.independent_of(&q) {
                return Ok((p, q));
            }
        }
        Err(MorphismError::Dependent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn homogeneity_is_enforced() {
        assert!(MultiPoly::new(2, 0, [(vec![1, 0], c(1.0)), (vec![1, 1], c(1.0))]).is_err());
        assert!(MultiPoly::new(1, 1, [(vec![2, 0], c(1.0)), (vec![1, 1], c(1.0))]).is_err());
        let p = MultiPoly::new(2, 1, [(vec![2, 0, 1], c(1.0)), (vec![1, 1, 1], c(2.0))]).unwrap();
        assert_eq!(p.bidegree(), (2, 1));
        assert!(matches!(MultiPoly::new(2, 0, [(vec![1, 0], c(1.0)), (vec![1, 0], c(-1.0))]), Err(MorphismError::EmptyPolynomial)));
        assert!(MultiPoly::new(2, 0, [(vec![1], c(1.0))]).is_err());
    }

    #[test]
    fn independence() {
        let p = MultiPoly::variable(2, 0, 0).unwrap();
        let q = MultiPoly::variable(2, 0, 1).unwrap();
        assert!(p.independent_of(&q));
        assert!(!p.independent_of(&p));
        let p2 = MultiPoly::new(2, 0, [(vec![1, 0], Complex64::new(0.0, 3.0))]).unwrap();
        assert!(!p.independent_of(&p2));
    }

    #[test]
    fn random_pairs_are_deterministic() {
        let a = MultiPoly::random_pair(3, 2, (2, 1), 9).unwrap();
        let b = MultiPoly::random_pair(3, 2, (2, 1), 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.0.bidegree(), (2, 1));
        assert!(a.0.independent_of(&a.1));
    }

    #[test]
    fn serde_round_trip() {
        let p = MultiPoly::new(1, 1, [(vec![1, 1], Complex64::new(0.5, -1.0))]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"vars1":1,"vars2":1,"terms":[[[1,1],[0.5,-1.0]]]}"#);
        assert_eq!(serde_json::from_str::<MultiPoly>(&s).unwrap(), p);
        assert!(serde_json::from_str::<MultiPoly>(r#"{"vars1":1,"vars2":0,"terms":[]}"#).is_err());
    }
}
