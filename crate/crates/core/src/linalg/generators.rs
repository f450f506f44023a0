//! Canonical generator matrices and the (p, q) index bookkeeping.
//!
//! All indices in this module's public functions are 1-based.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ONE};
use super::LinalgError;

fn check_index(n: usize, i: usize) -> Result<(), LinalgError> {
    if i == 0 || i > n {
        Err(LinalgError::IndexOutOfRange { index: i, size: n })
    } else {
        Ok(())
    }
}

/// `E_ij`: the matrix unit with a single 1 in position (i, j).
pub fn unit_matrix(n: usize, i: usize, j: usize) -> Result<ComplexMatrix, LinalgError> {
    check_index(n, i)?;
    check_index(n, j)?;
    let mut m = ComplexMatrix::zeros(n, n);
    m[(i - 1, j - 1)] = ONE;
    Ok(m)
}

/// `D_t = E_tt`.
pub fn diag_unit(n: usize, t: usize) -> Result<ComplexMatrix, LinalgError> {
    unit_matrix(n, t, t)
}

fn check_pair(n: usize, r: usize, s: usize) -> Result<(), LinalgError> {
    check_index(n, r)?;
    check_index(n, s)?;
    if r >= s {
        return Err(LinalgError::UnorderedPair { r, s });
    }
    Ok(())
}

/// `X_rs = (E_rs + E_sr) / sqrt 2`, for `r < s`.
pub fn sym_generator(n: usize, r: usize, s: usize) -> Result<ComplexMatrix, LinalgError> {
    check_pair(n, r, s)?;
    let mut m = ComplexMatrix::zeros(n, n);
    m[(r - 1, s - 1)] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    m[(s - 1, r - 1)] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    Ok(m)
}

/// `Y_rs = (E_rs - E_sr) / sqrt 2`, for `r < s`.
pub fn skew_generator(n: usize, r: usize, s: usize) -> Result<ComplexMatrix, LinalgError> {
    check_pair(n, r, s)?;
    let mut m = ComplexMatrix::zeros(n, n);
    m[(r - 1, s - 1)] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    m[(s - 1, r - 1)] = Complex64::new(-FRAC_1_SQRT_2, 0.0);
    Ok(m)
}

/// `I_pq = diag(-I_p, I_q)`.
pub fn signature_matrix(p: usize, q: usize) -> Result<ComplexMatrix, LinalgError> {
    if p + q == 0 {
        return Err(LinalgError::EmptyMatrix);
    }
    let entries: Vec<Complex64> = (0..p + q)
        .map(|i| if i < p { -ONE } else { ONE })
        .collect();
    Ok(ComplexMatrix::diagonal(&entries))
}

/// `J_n = [[0, I_n], [-I_n, 0]]`, of size `2n`.
pub fn symplectic_form(n: usize) -> Result<ComplexMatrix, LinalgError> {
    if n == 0 {
        return Err(LinalgError::EmptyMatrix);
    }
    let id = ComplexMatrix::identity(n);
    let zero = ComplexMatrix::zeros(n, n);
    ComplexMatrix::from_blocks(&zero, &id, &(-&id), &zero)
}

/// Ordered pairs `1 <= r < s <= n`, lexicographic.
pub fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|r| ((r + 1)..=n).map(move |s| (r, s)))
        .collect()
}

/// Index sets for a signature split `n = p + q`.
///
/// `delta1 = {1..p}`, `delta2 = {p+1..n}`; `lambda1` holds the ordered pairs
/// inside one block and `lambda2` the pairs straddling both blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSets {
    pub p: usize,
    pub q: usize,
    pub delta1: Vec<usize>,
    pub delta2: Vec<usize>,
    pub lambda1: Vec<(usize, usize)>,
    pub lambda2: Vec<(usize, usize)>,
}

impl IndexSets {
    pub fn new(p: usize, q: usize) -> Self {
        let n = p + q;
        let lambda1 = ordered_pairs(n)
            .into_iter()
            .filter(|&(r, s)| s <= p || r > p)
            .collect();
        let lambda2 = (1..=p)
            .flat_map(|r| ((p + 1)..=n).map(move |s| (r, s)))
            .collect();
        Self {
            p,
            q,
            delta1: (1..=p).collect(),
            delta2: ((p + 1)..=n).collect(),
            lambda1,
            lambda2,
        }
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// Characteristic function of `delta1`.
    pub fn chi(&self, i: usize) -> u32 {
        u32::from(i >= 1 && i <= self.p)
    }

    /// `(-1)^chi(i)`.
    pub fn chi_sign(&self, i: usize) -> f64 {
        if self.chi(i) == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(m: &ComplexMatrix) -> Vec<Vec<f64>> {
        m.to_rows().iter().map(|r| r.iter().map(|z| z.re).collect()).collect()
    }

    #[test]
    fn unit_matrix_examples() {
        assert_eq!(real(&unit_matrix(2, 1, 2).unwrap()), vec![vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert_eq!(diag_unit(2, 1).unwrap(), unit_matrix(2, 1, 1).unwrap());
        let prod = &unit_matrix(3, 2, 3).unwrap() * &unit_matrix(3, 3, 1).unwrap();
        assert_eq!(prod, unit_matrix(3, 2, 1).unwrap());
        assert!(matches!(unit_matrix(2, 3, 1), Err(LinalgError::IndexOutOfRange { .. })));
        assert!(unit_matrix(2, 0, 1).is_err());
    }

    #[test]
    fn generator_examples() {
        let h = FRAC_1_SQRT_2;
        assert_eq!(real(&sym_generator(2, 1, 2).unwrap()), vec![vec![0.0, h], vec![h, 0.0]]);
        assert_eq!(real(&skew_generator(2, 1, 2).unwrap()), vec![vec![0.0, h], vec![-h, 0.0]]);
        assert!(matches!(sym_generator(3, 2, 2), Err(LinalgError::UnorderedPair { .. })));
        assert!(skew_generator(3, 3, 1).is_err());
        for (r, s) in ordered_pairs(4) {
            for b in [sym_generator(4, r, s).unwrap(), skew_generator(4, r, s).unwrap()] {
                let norm = b.trace_of_product(&b.adjoint()).unwrap();
                assert!((norm.re - 1.0).abs() < 1e-15 && norm.im == 0.0);
            }
        }
    }

    #[test]
    fn signature_and_symplectic_forms() {
        assert_eq!(real(&signature_matrix(1, 1).unwrap()), vec![vec![-1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(real(&symplectic_form(1).unwrap()), vec![vec![0.0, 1.0], vec![-1.0, 0.0]]);
        for n in 1..5 {
            let j = symplectic_form(n).unwrap();
            let id = ComplexMatrix::identity(2 * n);
            assert_eq!(&j * &j.transpose(), id);
            assert_eq!(&j * &j, -&id);
        }
        let ipq = signature_matrix(2, 3).unwrap();
        assert_eq!(&ipq * &ipq, ComplexMatrix::identity(5));
        assert!(signature_matrix(0, 0).is_err());
    }

    #[test]
    fn index_sets_partition_pairs() {
        for n in 1..=8 {
            for p in 0..=n {
                let s = IndexSets::new(p, n - p);
                assert_eq!(s.lambda1.len() + s.lambda2.len(), n * (n - 1) / 2);
                for i in 1..=n {
                    assert_eq!(s.chi(i) == 1, s.delta1.contains(&i));
                }
            }
        }
        let s = IndexSets::new(1, 1);
        assert!(s.lambda1.is_empty());
        assert_eq!(s.lambda2, vec![(1, 2)]);
    }
}
