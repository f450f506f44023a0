//! Defining relations of each group and its Lie algebra.

use super::{Family, GroupDescriptor, GroupError, GroupPoint, Metric};
use crate::linalg::{signature_matrix, symplectic_form, ComplexMatrix, ONE};

struct Forms {
    /// `J_n`
    j: ComplexMatrix,
    /// `I_pq` (or `I_nn` for the doubled families)
    ipq: ComplexMatrix,
    /// `diag(I_pq, I_pq)`
    k: ComplexMatrix,
}

fn forms(d: &GroupDescriptor) -> Result<Forms, GroupError> {
    let n = d.n;
    let (p, q) = if d.family.has_signature() { (d.p, d.q) } else { (n, n) };
    let ipq = signature_matrix(p, q)?;
    let z = ComplexMatrix::zeros(ipq.rows(), ipq.rows());
    let k = ComplexMatrix::from_blocks(&ipq, &z, &z, &ipq)?;
    Ok(Forms { j: symplectic_form(n)?, ipq, k })
}

/// `g - J conj(g) J^{-1}`: deviation from the quaternionic block pattern
/// `(z | w ; -conj w | conj z)`.
fn quaternionic(g: &ComplexMatrix, j: &ComplexMatrix) -> f64 {
    let jinv = -j;
    g.max_abs_diff(&(&(j * &g.conj()) * &jinv))
}

/// `|g F g^t - F|` or, with `adjoint`, `|g F g^* - F|`.
fn preserves(g: &ComplexMatrix, form: &ComplexMatrix, adjoint: bool) -> f64 {
    let right = if adjoint { g.adjoint() } else { g.transpose() };
    (&(g * form) * &right).max_abs_diff(form)
}

fn det_one(g: &ComplexMatrix) -> Result<f64, GroupError> {
    Ok((g.determinant()? - ONE).norm())
}

/// Max-norm residual of the defining relations of the group, including
/// `det = 1` where the group requires it.
///
/// Compact duals are checked as unitary matrices preserving the complex
/// bilinear form of the source group (`J_n` for `Sp(n,R)`, `I_nn J_n` for
/// `SO*(2n)`, `I_pq` for `SO(p,q)`, `diag(I_pq,I_pq) J_n` for `Sp(p,q)`).
pub fn membership_residual(pt: &GroupPoint) -> Result<f64, GroupError> {
    let d = &pt.descriptor;
    let g = &pt.matrix;
    let size = d.matrix_size();
    if g.rows() != size || !g.is_square() {
        return Err(GroupError::SizeMismatch { descriptor: d.to_string(), expected: size, found: g.rows() });
    }
    let f = forms(d)?;
    let r = match d.metric {
        Metric::Riemannian => match d.family {
            Family::GlR => g.max_imag_abs(),
            Family::SlR => g.max_imag_abs().max(det_one(g)?),
            Family::UStar => quaternionic(g, &f.j),
            Family::SuStar => quaternionic(g, &f.j).max(det_one(g)?),
            Family::SpR => g.max_imag_abs().max(preserves(g, &f.j, false)),
            Family::SoStar => quaternionic(g, &f.j)
                .max(preserves(g, &f.ipq, true))
                .max(preserves(g, &(&f.ipq * &f.j), false))
                .max(det_one(g)?),
            Family::Upq => preserves(g, &f.ipq, true),
            Family::Sopq => g.max_imag_abs().max(preserves(g, &f.ipq, false)).max(det_one(g)?),
            Family::Sppq => quaternionic(g, &f.j).max(preserves(g, &f.k, true)),
        },
        Metric::Dual => {
            let unitary = (g * &g.adjoint()).max_abs_diff(&ComplexMatrix::identity(size));
            let holo = match d.family {
                Family::GlR | Family::UStar | Family::Upq => 0.0,
                Family::SlR | Family::SuStar => det_one(g)?,
                Family::SpR => preserves(g, &f.j, false),
                Family::SoStar => preserves(g, &(&f.ipq * &f.j), false).max(det_one(g)?),
                Family::Sopq => preserves(g, &f.ipq, false).max(det_one(g)?),
                Family::Sppq => preserves(g, &(&f.k * &f.j), false),
            };
            unitary.max(holo)
        }
    };
    Ok(r)
}

/// `|Z F + F Z^t|` or, with `adjoint`, `|Z F + F Z^*|`.
fn infinitesimal(z: &ComplexMatrix, form: &ComplexMatrix, adjoint: bool) -> f64 {
    let right = if adjoint { z.adjoint() } else { z.transpose() };
    (z * form).max_abs_diff(&(-&(form * &right)))
}

/// Max-norm residual of the linearised defining relations at the identity.
pub fn algebra_residual(d: &GroupDescriptor, z: &ComplexMatrix) -> Result<f64, GroupError> {
    let size = d.matrix_size();
    if z.rows() != size || !z.is_square() {
        return Err(GroupError::SizeMismatch { descriptor: d.to_string(), expected: size, found: z.rows() });
    }
    let f = forms(d)?;
    let tr = z.trace().norm();
    let r = match d.metric {
        Metric::Riemannian => match d.family {
            Family::GlR => z.max_imag_abs(),
            Family::SlR => z.max_imag_abs().max(tr),
            Family::UStar => quaternionic(z, &f.j),
            Family::SuStar => quaternionic(z, &f.j).max(tr),
            Family::SpR => z.max_imag_abs().max(infinitesimal(z, &f.j, false)),
            Family::SoStar => quaternionic(z, &f.j)
                .max(infinitesimal(z, &f.ipq, true))
                .max(infinitesimal(z, &(&f.ipq * &f.j), false))
                .max(tr),
            Family::Upq => infinitesimal(z, &f.ipq, true),
            Family::Sopq => z.max_imag_abs().max(infinitesimal(z, &f.ipq, false)),
            Family::Sppq => quaternionic(z, &f.j).max(infinitesimal(z, &f.k, true)),
        },
        Metric::Dual => {
            let skew = z.max_abs_diff(&(-&z.adjoint()));
            let holo = match d.family {
                Family::GlR | Family::UStar | Family::Upq => 0.0,
                Family::SlR | Family::SuStar => tr,
                Family::SpR => infinitesimal(z, &f.j, false),
                Family::SoStar => infinitesimal(z, &(&f.ipq * &f.j), false).max(tr),
                Family::Sopq => infinitesimal(z, &f.ipq, false),
                Family::Sppq => infinitesimal(z, &(&f.k * &f.j), false),
            };
            skew.max(holo)
        }
    };
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str, rows: &[&[f64]]) -> GroupPoint {
        GroupPoint::new(s.parse().unwrap(), ComplexMatrix::from_real_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn identity_is_in_every_group() {
        for s in [
            "gl_r:3", "sl_r:2", "u_star:2", "su_star:1", "sp_r:2", "so_star:2", "u_pq:2,1", "so_pq:1,2", "sp_pq:1,1",
            "dual:sp_pq:1,1", "dual:so_star:2", "dual:sl_r:3",
        ] {
            let d: GroupDescriptor = s.parse().unwrap();
            assert_eq!(membership_residual(&GroupPoint::identity(d)).unwrap(), 0.0, "{s}");
        }
    }

    #[test]
    fn diagonal_sl2_element() {
        assert!(membership_residual(&pt("sl_r:2", &[&[2.0, 0.0], &[0.0, 0.5]])).unwrap() < 1e-15);
        assert!(membership_residual(&pt("sl_r:2", &[&[2.0, 0.0], &[0.0, 1.0]])).unwrap() > 0.5);
    }

    #[test]
    fn shear_is_not_in_so11() {
        assert!(membership_residual(&pt("so_pq:1,1", &[&[1.0, 1.0], &[0.0, 1.0]])).unwrap() > 0.5);
        let (c, s) = (0.3f64.cosh(), 0.3f64.sinh());
        assert!(membership_residual(&pt("so_pq:1,1", &[&[c, s], &[s, c]])).unwrap() < 1e-15);
    }

    #[test]
    fn size_mismatch_is_reported() {
        let d: GroupDescriptor = "sp_r:2".parse().unwrap();
        let bad = GroupPoint { descriptor: d, matrix: ComplexMatrix::identity(2) };
        assert!(matches!(membership_residual(&bad), Err(GroupError::SizeMismatch { .. })));
    }
}
