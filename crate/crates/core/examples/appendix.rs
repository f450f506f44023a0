//! Powers and products of eigenfamilies: the fitted constants against the
//! closed forms for a few exponents.

use eigenmorph::families::{construct, AnyFamily, FamilyParams, VerifyOptions};
use eigenmorph::morphisms::{power_constants, verify_appendix_lemmas};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = construct(&"sp_r:2".parse()?, "6.2".parse()?, &FamilyParams::default())?;
    if let AnyFamily::Eigen(e) = &f {
        for k in 1..=4 {
            let (l, m) = power_constants(e.lambda, e.mu, k);
            println!("sp_r:2 power {k}: lambda_k={:.3} mu_k={:.3}", l.re, m.re);
        }
    }
    let bi = construct(&"so_pq:3,2".parse()?, "11.2".parse()?, &FamilyParams::default())?;
    for (k, l) in [(1, 1), (2, 1), (1, 3)] {
        for fam in [&f, &bi] {
            let r = verify_appendix_lemmas(fam, k, l, &VerifyOptions { samples: 8, ..VerifyOptions::default() })?;
            println!("{} k={k} l={l}: pass={} ({} checks)", r.descriptor, r.pass, r.checks.len());
        }
    }
    Ok(())
}
