//! The quotient x11 / x21 on SL(2,R), then a random degree-2 quotient on
//! a bi-eigenfamily, both verified with the same options.

use eigenmorph::families::{construct, FamilyParams, VerifyOptions};
use eigenmorph::morphisms::{build_morphism, example_sl2, imaginary_part_range, verify_morphism, MultiPoly};

fn show(label: &str, r: &eigenmorph::report::VerificationReport) {
    println!("{label}: pass={}", r.pass);
    for c in &r.checks {
        println!("  {:<52} {:.2e} (tol {:.0e}) {}", c.name, c.value, c.tolerance, if c.pass { "ok" } else { "FAIL" });
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = VerifyOptions { samples: 100, tol: 1e-10, ..VerifyOptions::default() };
    let sl2 = example_sl2()?;
    show("sl_r:2 x11/x21", &verify_morphism(&sl2, &opts)?);
    let (lo, hi, n) = imaginary_part_range(&sl2, &opts)?;
    println!("  Im(phi) over {n} points: [{lo:.3}, {hi:.3}]");

    let family = construct(&"u_pq:2,1".parse()?, "10.2".parse()?, &FamilyParams::default())?;
    let (p, q) = MultiPoly::random_pair(2, 1, (1, 1), 11)?;
    let m = build_morphism(&family, &p, &q)?;
    show("u_pq:2,1 bidegree (1,1)", &verify_morphism(&m, &VerifyOptions::default())?);
    Ok(())
}
