//! The smoothed augmented Lagrangian η(x, λ; μ, ρ) = min_s L(x, λ, s; μ, ρ)
//! and its λ-gradient ∇_λη = 𝒜z − ρb.
//!
//! η itself is needed only for testing and optional logging; the Newton
//! loop runs entirely on the gradient and the Schur complement.

use super::{compute_sz, CentralPair, SolveError};
use crate::cones::Element;
use crate::probio::Problem;

/// ∇_λη = 𝒜z − ρb at the given central pair.
pub fn grad_eta(problem: &Problem, pair: &CentralPair, rho: f64) -> Vec<f64> {
    let mut g = problem.a.apply(&pair.z).expect("pair matches problem dims");
    for (gi, bi) in g.iter_mut().zip(&problem.b) {
        *gi -= rho * bi;
    }
    g
}

/// η evaluated through the closed-form minimizer:
/// −ρ⟨b,λ⟩ + ρμφ(s) + ρ⟨x, 𝒜*λ+s−c⟩ + ½‖𝒜*λ+s−c‖².
pub fn eval_eta(
    problem: &Problem,
    x: &Element,
    lambda: &[f64],
    mu: f64,
    rho: f64,
) -> Result<f64, SolveError> {
    let pair = compute_sz(problem, x, lambda, mu, rho)?;
    eval_eta_with(problem, x, lambda, mu, rho, &pair)
}

/// Same as [`eval_eta`] but reusing an already-computed pair.
pub fn eval_eta_with(
    problem: &Problem,
    x: &Element,
    lambda: &[f64],
    mu: f64,
    rho: f64,
    pair: &CentralPair,
) -> Result<f64, SolveError> {
    let phi = -pair
        .s_spec
        .eigenvalues()
        .iter()
        .map(|l| l.ln())
        .sum::<f64>();
    // 𝒜*λ + s − c
    let mut rd = problem.a.apply_adjoint(&problem.cone, lambda)?;
    rd.axpy(1.0, &pair.s);
    rd.axpy(-1.0, &problem.c);

    let cone = &problem.cone;
    let b_dot_l: f64 = problem.b.iter().zip(lambda).map(|(b, l)| b * l).sum();
    Ok(-rho * b_dot_l + rho * mu * phi + rho * cone.dot(x, &rd) + 0.5 * cone.dot(&rd, &rd))
}
