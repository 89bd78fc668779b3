//! Closed-form central-path pair.
//!
//! With u = ρx − c + 𝒜*λ, the minimizer of the augmented Lagrangian in s
//! and the auxiliary z = ρx + 𝒜*λ + s − c are
//!
//! ```text
//!   s = ½(√(u² + 4ρμe) − u),    z = ½(√(u² + 4ρμe) + u),
//! ```
//!
//! computed per eigenvalue of u in u's own frame. The pair is always
//! interior and satisfies s∘z = ρμe and ⟨s,z⟩ = ρμν exactly; z − s = u.

use super::SolveError;
use crate::cones::{Element, Spectral};
use crate::probio::Problem;

/// The central-path pair at one iterate, sharing u's Jordan frame.
#[derive(Clone, Debug)]
pub struct CentralPair {
    pub s: Element,
    pub z: Element,
    pub s_spec: Spectral,
    pub z_spec: Spectral,
    /// u = ρx − c + 𝒜*λ.
    pub u: Element,
}

/// Closed-form (s, z) at (x, λ; μ, ρ). Total for μ, ρ > 0.
pub fn compute_sz(
    problem: &Problem,
    x: &Element,
    lambda: &[f64],
    mu: f64,
    rho: f64,
) -> Result<CentralPair, SolveError> {
    if !(mu > 0.0 && rho > 0.0) {
        return Err(SolveError::Config(
            "compute_sz requires mu > 0 and rho > 0".into(),
        ));
    }
    let rho_mu = rho * mu;

    let mut u = problem.a.apply_adjoint(&problem.cone, lambda)?;
    u.axpy(rho, x);
    u.axpy(-1.0, &problem.c);

    let u_spec = problem.cone.spectral(&u)?;
    let r = u_spec.eigenvalues().len();
    let mut s_eigs = Vec::with_capacity(r);
    let mut z_eigs = Vec::with_capacity(r);
    for &l in u_spec.eigenvalues() {
        // rationalized per sign so neither eigenvalue cancels
        let d = (l * l + 4.0 * rho_mu).sqrt();
        let (sv, zv) = if l >= 0.0 {
            let zv = 0.5 * (d + l);
            (rho_mu / zv, zv)
        } else {
            let sv = 0.5 * (d - l);
            (sv, rho_mu / sv)
        };
        s_eigs.push(sv);
        z_eigs.push(zv);
    }
    let s_spec = u_spec.with_eigs(s_eigs);
    let z_spec = u_spec.with_eigs(z_eigs);
    let s = s_spec.recompose();
    let z = z_spec.recompose();

    if crate::debug_checks_enabled() {
        let e = problem.cone.identity();
        let sz = problem.cone.jordan_product(&s, &z)?;
        let mut dev = sz.clone();
        dev.axpy(-rho_mu, &e);
        // recomposition noise grows with λmax(s)·λmax(z) on PSD blocks
        let smax = s_spec.eig_queries().lambda_max;
        let zmax = z_spec.eig_queries().lambda_max;
        debug_invariant(
            dev.inf_norm() <= 1e-9 * rho_mu + 1e-12 * smax * zmax,
            "central-path product identity violated",
        );
        let mut zsu = z.sub(&s);
        zsu.axpy(-1.0, &u);
        let dev_zsu = zsu.norm();
        let scale = 1.0 + u.norm() + smax + zmax;
        debug_invariant(
            dev_zsu <= 1e-11 * scale,
            &format!("z - s = u identity violated: dev {dev_zsu:e} vs scale {scale:e}"),
        );
    }

    Ok(CentralPair {
        s,
        z,
        s_spec,
        z_spec,
        u,
    })
}

fn debug_invariant(ok: bool, msg: &str) {
    assert!(ok, "NAL_DEBUG invariant: {msg}");
}
