//! Matrix exponential by scaling and squaring with a truncated Taylor series.

use super::matrix::ComplexMatrix;
use super::LinalgError;

/// The scaled matrix has 1-norm at most this before the series is summed.
const SCALED_NORM: f64 = 0.25;
const MAX_TERMS: usize = 40;

/// `exp(a)` for a square complex matrix.
///
/// The series for `a / 2^s` converges to machine precision in well under
/// `MAX_TERMS` terms once `|a / 2^s|_1 <= 1/4`; failing to converge, or a
/// non-finite input, is reported rather than returning a wrong result.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare(a.rows(), a.cols()));
    }
    let norm = a.one_norm();
    if !norm.is_finite() || a.entries().iter().any(|z| !z.is_finite()) {
        return Err(LinalgError::ExpDiverged { norm });
    }
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as u32
    } else {
        0
    };
    if squarings > 60 {
        return Err(LinalgError::ExpDiverged { norm });
    }
    let scaled = a.scale_real(0.5f64.powi(squarings as i32));

    let n = a.rows();
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    let mut converged = false;
    for k in 1..=MAX_TERMS {
        term = (&term * &scaled).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        if term.max_abs() <= f64::EPSILON * sum.max_abs() * 0.25 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(LinalgError::ExpDiverged { norm });
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn exp_of_zero_is_identity() {
        let z = ComplexMatrix::zeros(3, 3);
        assert_eq!(expm(&z).unwrap(), ComplexMatrix::identity(3));
    }

    #[test]
    fn exp_of_diagonal() {
        let t = 1.7;
        let d = ComplexMatrix::from_real_rows(&[&[t, 0.0], &[0.0, -t]]).unwrap();
        let e = expm(&d).unwrap();
        assert!((e[(0, 0)].re - t.exp()).abs() < 1e-13 * t.exp());
        assert!((e[(1, 1)].re - (-t).exp()).abs() < 1e-15);
        assert!(e[(0, 1)].norm() < 1e-15);
        assert!((e.determinant().unwrap().re - 1.0).abs() < 1e-13);
    }

    #[test]
    fn exp_of_rotation_generator() {
        let th = 0.9;
        let a = ComplexMatrix::from_real_rows(&[&[0.0, th], &[-th, 0.0]]).unwrap();
        let e = expm(&a).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[th.cos(), th.sin()], &[-th.sin(), th.cos()]]).unwrap();
        assert!(e.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn exp_of_nilpotent() {
        let a = ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 3.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        let e = expm(&a).unwrap();
        assert!((e[(0, 1)] - Complex64::new(0.0, 3.0)).norm() < 1e-14);
        assert!((e[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn non_finite_input_is_an_error() {
        let a = ComplexMatrix::from_real_rows(&[&[f64::NAN]]).unwrap();
        assert!(matches!(expm(&a), Err(LinalgError::ExpDiverged { .. })));
        assert!(expm(&ComplexMatrix::zeros(2, 3)).is_err());
    }
}
