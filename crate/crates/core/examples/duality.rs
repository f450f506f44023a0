//! Transports families to the compact duals and compares the fitted
//! constants with those of the source, which should flip sign.

use eigenmorph::duality::{dualize_family, sign_diagnostic, verify_dual};
use eigenmorph::families::{construct, verify_family, FamilyParams, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = VerifyOptions { samples: 10, ..VerifyOptions::default() };
    for (g, t) in [("gl_r:2", "4.2"), ("sp_r:2", "6.2"), ("so_star:3", "8.2"), ("u_pq:1,2", "10.2")] {
        let f = construct(&g.parse()?, t.parse()?, &FamilyParams::default())?;
        let dual = dualize_family(&f);
        let src = verify_family(&f, &opts)?;
        let r = verify_dual(&dual, &opts)?;
        println!("{} pass={}", r.descriptor, r.pass);
        for m in r.measured.iter().filter(|m| !m.name.ends_with("(source)")) {
            let before = src.measured(&m.name).unwrap_or_default();
            println!("  {:<9} {:>7.3} -> {:>7.3}", m.name, before.re, m.measured.re);
        }
    }
    let diag = sign_diagnostic(&"sp_r:2".parse()?)?;
    println!(
        "{}: continued form matches signs: {}, literal trace form: {}",
        diag.descriptor, diag.continued_form_agrees, diag.literal_form_agrees
    );
    Ok(())
}
