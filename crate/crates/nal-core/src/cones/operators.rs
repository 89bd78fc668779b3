//! The frame-aligned weight operator ℒ(z)ℒ(z+s)⁻¹.
//!
//! When s and z share a Jordan frame the operator is diagonal in the
//! Peirce decomposition of that frame: the coefficient on the (i,j)
//! subspace is (λᵢ(z)+λⱼ(z)) / (λᵢ(z)+λⱼ(z)+λᵢ(s)+λⱼ(s)), which collapses
//! to λᵢ(z)/(λᵢ(z)+λᵢ(s)) on the diagonal. For interior s, z every
//! coefficient lies strictly in (0, 1).

use nalgebra::DMatrix;

use super::psd::{smat, svec_into};
use super::spectral::{FrameBlock, Spectral};
use super::{ConeError, Element};

fn check_pair(s: &Spectral, z: &Spectral) -> Result<(), ConeError> {
    if !s.same_frame(z) {
        return Err(ConeError::FrameMismatch);
    }
    for (spec, _) in [(s, "s"), (z, "z")] {
        for i in 0..spec.cone().blocks().len() {
            for &l in spec.block_eigs(i) {
                if l <= 0.0 {
                    return Err(ConeError::NotInterior {
                        block: i,
                        eigenvalue: l,
                    });
                }
            }
        }
    }
    Ok(())
}

fn gamma(zi: f64, zj: f64, si: f64, sj: f64) -> f64 {
    let zz = zi + zj;
    zz / (zz + si + sj)
}

/// Apply ℒ(z)ℒ(z+s)⁻¹ to `y`. Requires interior s, z sharing a frame
/// (as produced by the closed-form central-path pair).
pub fn weight_apply(s: &Spectral, z: &Spectral, y: &Element) -> Result<Element, ConeError> {
    check_pair(s, z)?;
    let cone = s.cone();
    if y.len() != cone.vec_len() {
        return Err(ConeError::DimensionMismatch {
            expected: cone.vec_len(),
            got: y.len(),
        });
    }
    let mut out = vec![0.0; cone.vec_len()];
    for (i, fb) in s.frame().blocks.iter().enumerate() {
        let span = cone.block_span(i);
        let se = s.block_eigs(i);
        let ze = z.block_eigs(i);
        let ys = &y.as_slice()[span.clone()];
        let os = &mut out[span];
        match fb {
            FrameBlock::Orthant { perm } => {
                for (k, &c) in perm.iter().enumerate() {
                    os[c] = ze[k] / (ze[k] + se[k]) * ys[c];
                }
            }
            FrameBlock::SecondOrder { dir } => {
                // y = P₁₁y + P₂₂y + P₁₂y with P₁₁y = 2⟨y,v₁⟩v₁ etc.
                let n = ys.len();
                let mut v1 = vec![0.0; n];
                let mut v2 = vec![0.0; n];
                v1[0] = 0.5;
                v2[0] = 0.5;
                for (k, d) in dir.iter().enumerate() {
                    v1[1 + k] = 0.5 * d;
                    v2[1 + k] = -0.5 * d;
                }
                let dot = |a: &[f64], b: &[f64]| -> f64 {
                    a.iter().zip(b).map(|(x, y)| x * y).sum()
                };
                let c1 = 2.0 * dot(ys, &v1);
                let c2 = 2.0 * dot(ys, &v2);
                let g11 = gamma(ze[0], ze[0], se[0], se[0]);
                let g22 = gamma(ze[1], ze[1], se[1], se[1]);
                let g12 = gamma(ze[0], ze[1], se[0], se[1]);
                for k in 0..n {
                    let p11 = c1 * v1[k];
                    let p22 = c2 * v2[k];
                    let p12 = ys[k] - p11 - p22;
                    os[k] = g11 * p11 + g22 * p22 + g12 * p12;
                }
            }
            FrameBlock::Psd { q } => {
                let p = q.nrows();
                let ym = smat(p, ys);
                let mut yt = q.transpose() * ym * q;
                for c in 0..p {
                    for r in 0..p {
                        yt[(r, c)] *= gamma(ze[r], ze[c], se[r], se[c]);
                    }
                }
                let back: DMatrix<f64> = q * yt * q.transpose();
                svec_into(&back, os);
            }
        }
    }
    Ok(Element::from_vec(out))
}

/// Extreme eigenvalues of the weight operator over all Peirce subspaces.
pub fn weight_eig_bounds(s: &Spectral, z: &Spectral) -> Result<(f64, f64), ConeError> {
    check_pair(s, z)?;
    let cone = s.cone();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..cone.blocks().len() {
        let se = s.block_eigs(i);
        let ze = z.block_eigs(i);
        let r = se.len();
        for a in 0..r {
            for b in a..r {
                let g = gamma(ze[a], ze[b], se[a], se[b]);
                lo = lo.min(g);
                hi = hi.max(g);
            }
        }
    }
    Ok((lo, hi))
}
