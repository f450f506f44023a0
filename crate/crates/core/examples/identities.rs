//! Checks the generator identities for a few signatures and lists any that fail.

use eigenmorph::linalg::check_identities;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, p, q) in [(2, 1, 1), (3, 2, 1), (4, 2, 2)] {
        let report = check_identities(n, p, q)?;
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        println!("n={n} p={p} q={q}: {} identities, failing: {failed:?}", report.checks.len());
        for c in &report.checks {
            println!("  {:<28} {:?} float {:.1e} exact {:.1e}", c.name, c.origin, c.max_float_deviation, c.max_exact_deviation);
        }
    }
    Ok(())
}
