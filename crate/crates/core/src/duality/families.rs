//! Transport of families to the compact dual.

use num_complex::Complex64;

use crate::families::{verify_family, AnyFamily, BiEigenFamily, EigenFamily, FamilyError, VerifyOptions};
use crate::groups::GroupDescriptor;
use crate::report::{Check, VerificationReport};

const DUAL_TAG: &str = "dual-of:";

fn toggle(d: GroupDescriptor) -> GroupDescriptor {
    if d.is_dual() {
        d.source()
    } else {
        d.dual()
    }
}

fn toggle_provenance(p: &str) -> String {
    match p.strip_prefix(DUAL_TAG) {
        Some(rest) => rest.to_string(),
        None => format!("{DUAL_TAG}{p}"),
    }
}

fn dualize_part(f: &EigenFamily) -> EigenFamily {
    EigenFamily {
        descriptor: toggle(f.descriptor),
        provenance: toggle_provenance(&f.provenance),
        generators: f.generators.clone(),
        lambda: -f.lambda,
        mu: -f.mu,
    }
}

/// The same polynomial generators read on the compact dual, with every
/// constant negated. Applied to a dual family it returns the source family.
pub fn dualize_family(f: &AnyFamily) -> AnyFamily {
    match f {
        AnyFamily::Eigen(e) => AnyFamily::Eigen(dualize_part(e)),
        AnyFamily::Bi(b) => AnyFamily::Bi(BiEigenFamily {
            provenance: toggle_provenance(&b.provenance),
            e1: dualize_part(&b.e1),
            e2: dualize_part(&b.e2),
            mu_cross: b.mu_cross.map(|m| -m),
        }),
    }
}

/// Verifies a dual family on compact points with the signed basis, and
/// checks that every fitted constant is the negative of the constant
/// fitted for the source family with the same options.
pub fn verify_dual(f: &AnyFamily, opts: &VerifyOptions) -> Result<VerificationReport, FamilyError> {
    let (dual, source) = if f.descriptor().is_dual() { (f.clone(), dualize_family(f)) } else { (dualize_family(f), f.clone()) };
    let mut report = verify_family(&dual, opts)?;
    report.command = "verify-dual".into();
    let primal = verify_family(&source, opts)?;
    // A constant that is only fitted, not asserted, has nothing to flip.
    let names: Vec<String> = report.measured.iter().filter(|m| m.expected.is_some()).map(|m| m.name.clone()).collect();
    for name in names {
        let (Some(d), Some(s)) = (report.measured(&name), primal.measured(&name)) else { continue };
        report.push(Check::at_most(format!("sign flip {name}"), (d + s).norm(), opts.constant_tol));
        report.measure(format!("{name} (source)"), None, s);
    }
    if !primal.pass {
        report.note(format!("source family fails its own verification: {}", primal.failure_summary()));
    }
    Ok(report)
}

/// `(lambda, mu)` of a part after dualizing, for display.
pub fn dual_constants(f: &EigenFamily) -> (Complex64, Complex64) {
    (-f.lambda, -f.mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{construct, FamilyParams, Theorem};

    fn quick() -> VerifyOptions {
        VerifyOptions { samples: 4, ..VerifyOptions::default() }
    }

    #[test]
    fn dualizing_twice_is_the_identity() {
        let d: GroupDescriptor = "so_star:2".parse().unwrap();
        let f = construct(&d, Theorem::SoStarV, &FamilyParams::default()).unwrap();
        let dd = dualize_family(&dualize_family(&f));
        assert_eq!(dd, f);
        let AnyFamily::Bi(b) = dualize_family(&f) else { panic!() };
        assert_eq!(b.mu_cross, Some(Complex64::new(-0.5, 0.0)));
        assert!(b.provenance.starts_with(DUAL_TAG));
    }

    #[test]
    fn duals_verify() {
        for (g, t) in [("gl_r:2", "4.2"), ("sp_r:2", "6.2"), ("so_star:2", "8.2"), ("u_pq:1,2", "10.2"), ("sp_pq:1,1", "12.2")] {
            let d: GroupDescriptor = g.parse().unwrap();
            let f = construct(&d, t.parse().unwrap(), &FamilyParams::default()).unwrap();
            let r = verify_dual(&f, &quick()).unwrap();
            assert!(r.pass, "{g} {t}: {}", r.failure_summary());
            assert!(r.descriptor.starts_with("dual:"));
        }
    }

    #[test]
    fn dual_constants_of_symplectic_family() {
        let f = crate::families::family_spr_v(2, &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]).unwrap();
        assert_eq!(dual_constants(&f), (Complex64::new(-0.5, 0.0), Complex64::new(0.5, 0.0)));
    }
}
