//! One Newton step on λ: solve ∇²_λη Δλ = −∇_λη through the Schur
//! complement, measure progress with the merit value
//! δ = √(Δλᵀ∇²η Δλ/(ρμ)), and pick the damped step length.

use super::{CentralPair, SolveError};
use crate::linalg::{scm_assemble, ScmMatrix};
use crate::probio::Problem;

/// 2 − √3: full Newton steps are taken strictly below this merit value.
pub fn full_step_threshold() -> f64 {
    2.0 - 3.0f64.sqrt()
}

/// Newton direction with its merit value and the system that produced it.
#[derive(Debug)]
pub struct NewtonStep {
    pub delta_lambda: Vec<f64>,
    /// δ = √(−Δλᵀ∇η/(ρμ)); equals √(Δλᵀ∇²η Δλ/(ρμ)) at the exact
    /// direction, which debug runs verify.
    pub delta: f64,
    pub scm: ScmMatrix,
    /// Diagonal shift the factorization needed.
    pub cholesky_shift: f64,
}

pub fn newton_step(
    problem: &Problem,
    pair: &CentralPair,
    grad: &[f64],
    mu: f64,
    rho: f64,
) -> Result<NewtonStep, SolveError> {
    let mut scm = scm_assemble(&problem.a, &pair.s_spec, &pair.z_spec)?;
    let neg_grad: Vec<f64> = grad.iter().map(|g| -g).collect();
    let delta_lambda = scm.solve(&neg_grad)?;
    let rho_mu = rho * mu;
    let dir_sq: f64 = delta_lambda
        .iter()
        .zip(&neg_grad)
        .map(|(d, g)| d * g)
        .sum();
    let delta = (dir_sq.max(0.0) / rho_mu).sqrt();

    if crate::debug_checks_enabled() {
        // definitional form δ² = ΔᵀMΔ/(ρμ); the two forms differ by
        // Δᵀ(MΔ + ∇η)/(ρμ), bounded by the solve's backward error
        let md = scm.matrix() * nalgebra::DVector::from_column_slice(&delta_lambda);
        let quad: f64 = delta_lambda.iter().zip(md.iter()).map(|(d, m)| d * m).sum();
        let dl_norm = delta_lambda.iter().map(|d| d * d).sum::<f64>().sqrt();
        let g_norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        let allowed = dl_norm * 2e-10 * (1.0 + g_norm) + 1e-11 * dir_sq.abs().max(quad.abs());
        assert!(
            (dir_sq - quad).abs() <= allowed,
            "merit formulas disagree: residual form {dir_sq:e} vs definition {quad:e} \
             (allowed {allowed:e})"
        );
    }

    let shift = scm.shift();
    Ok(NewtonStep {
        delta_lambda,
        delta,
        scm,
        cholesky_shift: shift,
    })
}

/// Step-length rule: α = 1 when δ < 2−√3, else 1/(1+δ).
pub fn step_length(delta: f64) -> f64 {
    if delta < full_step_threshold() {
        1.0
    } else {
        1.0 / (1.0 + delta)
    }
}
