//! Power and product laws for eigenfamilies.
//!
//! If `E` has constants `(lambda, mu)` then the products of `k` members form
//! an eigenfamily with `lambda_k = k lambda + k(k-1) mu` and `mu_k = k^2 mu`.
//! Products `Phi Psi` with `Phi` from `E_1^k`, `Psi` from `E_2^l` satisfy
//! `kappa(Phi, Psi) = mu_x k l Phi Psi`, and the products themselves form an
//! eigenfamily with
//! `lambda = lambda_1k + lambda_2l + 2 mu_x k l`, `mu = mu_1k + mu_2l + 2 mu_x k l`.

use num_complex::Complex64;

use super::MorphismError;
use crate::calculus::ScalarField;
use crate::families::{verify_family, AnyFamily, BiEigenFamily, EigenFamily, VerifyOptions};
use crate::report::VerificationReport;

/// Products taken per power family.
const PRODUCTS: usize = 3;

/// `(lambda_k, mu_k)` for the products of `k` members.
pub fn power_constants(lambda: Complex64, mu: Complex64, k: u32) -> (Complex64, Complex64) {
    let k = f64::from(k);
    (k * lambda + k * (k - 1.0) * mu, k * k * mu)
}

/// Up to `PRODUCTS` products of `k` generators, each a run of consecutive
/// generators starting at a different index.
pub fn power_family(f: &EigenFamily, k: u32) -> Result<EigenFamily, MorphismError> {
    if k == 0 {
        return Err(MorphismError::ZeroDegree);
    }
    let m = f.len();
    let generators = (0..m.min(PRODUCTS))
        .map(|start| {
            let factors: Vec<ScalarField> = (0..k as usize).map(|j| f.generators[(start + j) % m].clone()).collect();
            if factors.len() == 1 {
                factors[0].clone()
            } else {
                ScalarField::product(factors)
            }
        })
        .collect();
    let (lambda, mu) = power_constants(f.lambda, f.mu, k);
    Ok(EigenFamily { generators, lambda, mu, provenance: format!("power {k} of {}", f.provenance), ..f.clone() })
}

fn merge(into: &mut VerificationReport, prefix: &str, from: VerificationReport) {
    for mut c in from.checks {
        c.name = format!("{prefix}{}", c.name);
        into.push(c);
    }
    for m in from.measured {
        into.measure(format!("{prefix}{}", m.name), m.expected, m.measured);
    }
    for n in from.notes {
        into.note(format!("{prefix}{n}"));
    }
    into.samples = into.samples.max(from.samples);
}

/// Checks the power laws on `E^k` (and `E_2^l`), the cross law
/// `mu_x k l` and the product family `E_1^k E_2^l`.
///
/// For a plain family both sides come from the same family with `mu_x = mu`.
/// For a pair without a cross constant only the power laws are checked.
pub fn verify_appendix_lemmas(family: &AnyFamily, k: u32, l: u32, opts: &VerifyOptions) -> Result<VerificationReport, MorphismError> {
    if opts.samples == 0 {
        return Err(MorphismError::NoSamples);
    }
    let (e1, e2, cross) = match family {
        AnyFamily::Eigen(e) => (e, e, Some(e.mu)),
        AnyFamily::Bi(b) => (&b.e1, &b.e2, b.mu_cross),
    };
    let p1 = power_family(e1, k)?;
    let p2 = power_family(e2, l)?;
    let mut report = VerificationReport::new("verify-appendix", family.descriptor().to_string(), format!("appendix:k={k},l={l}:{}", family.provenance()));
    report.seed = opts.seed;
    report.tolerance = opts.tol;
    let Some(mu_x) = cross else {
        merge(&mut report, "E1^k ", verify_family(&AnyFamily::Eigen(p1), opts)?);
        merge(&mut report, "E2^l ", verify_family(&AnyFamily::Eigen(p2), opts)?);
        report.note("no cross constant, product laws not applicable");
        return Ok(report);
    };
    let kl = f64::from(k * l);
    let products: Vec<ScalarField> = p1
        .generators
        .iter()
        .flat_map(|a| p2.generators.iter().map(move |b| a.times(b)))
        .take(PRODUCTS + 1)
        .collect();
    let mixed = EigenFamily {
        descriptor: p1.descriptor,
        provenance: format!("products of {} and {}", p1.provenance, p2.provenance),
        generators: products,
        lambda: p1.lambda + p2.lambda + 2.0 * kl * mu_x,
        mu: p1.mu + p2.mu + 2.0 * kl * mu_x,
    };
    let powers = BiEigenFamily { provenance: report.provenance.clone(), e1: p1, e2: p2, mu_cross: Some(kl * mu_x) };
    merge(&mut report, "powers ", verify_family(&AnyFamily::Bi(powers), opts)?);
    merge(&mut report, "products ", verify_family(&AnyFamily::Eigen(mixed), opts)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{construct, FamilyParams, Theorem};

    fn family(d: &str, t: Theorem) -> AnyFamily {
        construct(&d.parse().unwrap(), t, &FamilyParams::default()).unwrap()
    }

    fn quick() -> VerifyOptions {
        VerifyOptions { samples: 8, tol: 1e-8, ..VerifyOptions::default() }
    }

    #[test]
    fn power_constants_by_hand() {
        let c = |x: f64| Complex64::new(x, 0.0);
        assert_eq!(power_constants(c(0.5), c(-0.5), 2), (c(0.0), c(-2.0)));
        assert_eq!(power_constants(c(1.0), c(0.0), 3), (c(3.0), c(0.0)));
    }

    #[test]
    fn spr_squares_are_harmonic() {
        let f = family("sp_r:2", Theorem::SpRV);
        let AnyFamily::Eigen(e) = &f else { panic!() };
        let sq = power_family(e, 2).unwrap();
        assert_eq!(sq.lambda, Complex64::new(0.0, 0.0));
        let r = verify_appendix_lemmas(&f, 2, 1, &quick()).unwrap();
        assert!(r.pass, "{}", r.failure_summary());
    }

    #[test]
    fn sostar_cross_power_law() {
        let f = family("so_star:2", Theorem::SoStarV);
        let r = verify_appendix_lemmas(&f, 1, 2, &quick()).unwrap();
        assert!(r.pass, "{}", r.failure_summary());
        let mx = r.measured("powers mu_cross").unwrap();
        assert!((mx - Complex64::new(1.0, 0.0)).norm() < 1e-8, "{mx}");
    }

    #[test]
    fn wrong_cross_constant_fails() {
        let AnyFamily::Bi(mut b) = family("u_pq:2,1", Theorem::UpqV) else { panic!() };
        b.mu_cross = Some(Complex64::new(0.5, 0.0));
        let r = verify_appendix_lemmas(&AnyFamily::Bi(b), 2, 2, &quick()).unwrap();
        assert!(!r.pass);
    }
}
