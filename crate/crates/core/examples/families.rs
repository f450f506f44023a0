//! Constructs one (bi-)eigenfamily per theorem and prints the fitted constants.

use eigenmorph::families::{construct, verify_family, FamilyParams, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("gl_r:3", "4.2"),
        ("sl_r:3", "4.2"),
        ("u_star:2", "5.4"),
        ("sp_r:2", "6.2"),
        ("so_star:3", "8.2"),
        ("u_pq:2,1", "10.2"),
        ("so_pq:3,2", "11.2"),
        ("sp_pq:1,2", "12.2"),
    ];
    for (g, t) in cases {
        let f = construct(&g.parse()?, t.parse()?, &FamilyParams::default())?;
        let r = verify_family(&f, &VerifyOptions::default())?;
        let constants: Vec<String> = r.measured.iter().map(|m| format!("{}={:.6}", m.name, m.measured.re)).collect();
        println!("{t:>5} on {g:<10} pass={}  {}", r.pass, constants.join(" "));
    }
    Ok(())
}
