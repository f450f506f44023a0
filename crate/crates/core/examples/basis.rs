//! Builds signed orthonormal bases and prints their sizes and sign counts,
//! for a non-compact group and its compact dual.

use eigenmorph::groups::{basis_for, verify_basis, GroupDescriptor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for s in ["gl_r:3", "sp_r:2", "u_pq:2,1", "dual:sp_r:2"] {
        let d: GroupDescriptor = s.parse()?;
        let b = basis_for(&d)?;
        let plus = b.signs.iter().filter(|&&s| s > 0).count();
        let report = verify_basis(&d)?;
        println!(
            "{s:<12} {}  dim {:>2}  signs +{plus}/-{}  verified: {}",
            d.group_name(),
            b.len(),
            b.len() - plus,
            report.pass
        );
    }
    Ok(())
}
