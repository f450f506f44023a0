//! Verifies every coordinate lemma at its smallest interesting size.

use eigenmorph::calculus::{verify_lemma, CoordinateLemma, LemmaOptions};
use eigenmorph::groups::GroupDescriptor;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("gl_r:3", CoordinateLemma::GlR),
        ("u_star:2", CoordinateLemma::UStar),
        ("sp_r:2", CoordinateLemma::SpR),
        ("so_star:2", CoordinateLemma::SoStar),
        ("u_pq:2,1", CoordinateLemma::Upq),
        ("so_pq:2,1", CoordinateLemma::Sopq),
        ("sp_pq:1,1", CoordinateLemma::Sppq),
    ];
    for (s, lemma) in cases {
        let d: GroupDescriptor = s.parse()?;
        let r = verify_lemma(&d, lemma, &LemmaOptions::default())?;
        let verdict = if r.pass { "PASS".to_string() } else { format!("FAIL: {}", r.failure_summary()) };
        println!("lemma {} on {s}: {verdict}", lemma.tag());
    }
    Ok(())
}
