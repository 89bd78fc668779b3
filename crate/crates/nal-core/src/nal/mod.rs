//! The NAL algorithm: closed-form central-path pair, augmented Lagrangian
//! calculus, the Newton inner loop, and the outer μ/ρ schedule.

mod central;
mod eta;
mod newton;
mod solve;
#[cfg(test)]
pub(crate) mod test_util;

pub use central::{compute_sz, CentralPair};
pub use eta::{eval_eta, grad_eta};
pub use newton::{full_step_threshold, newton_step, step_length, NewtonStep};
pub use solve::{
    inner_solve, outer_iterations_to_reach, residuals, solve, solve_with, InnerSolve, Residuals,
    StepProbe,
};

use thiserror::Error;

use crate::cones::{ConeError, Element};
use crate::linalg::LinalgError;
use crate::probio::ProbError;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid solver configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Problem(#[from] ProbError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("inner Newton loop exceeded {max} steps at outer iteration {outer}")]
    MaxInnerExceeded {
        outer: usize,
        max: usize,
        records: Vec<IterRecord>,
    },
}

/// Outer/inner loop parameters. Defaults follow the experimental protocol:
/// μ⁽⁰⁾ = 0.1, ρ⁽⁰⁾ = 1, κ = 1/4, tol = 1e-6, at most 100 outer rounds.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub mu0: f64,
    pub rho0: f64,
    /// Barrier decrease factor σ ∈ (0,1); μ ← σμ each outer round.
    pub sigma: f64,
    /// Floor of the penalty schedule ρ ← max{ρ/2, ρ_min}. Keeping ρ
    /// shrinking accelerates the multiplier dynamics (degenerate SDPs
    /// stall with ρ pinned at 1); the terminal polish step compensates
    /// for the 1/ρ dilution of primal accuracy.
    pub rho_min: f64,
    /// Inner stop target κ ∈ (0,1).
    pub kappa: f64,
    pub tol: f64,
    pub max_outer: usize,
    /// Safety cap only; the inner loop provably terminates. The damped
    /// phase reduces δ by roughly one per step, and the first outer
    /// round after a cold start can legitimately need a few hundred
    /// steps on larger instances.
    pub max_inner_per_outer: usize,
    /// Starting primal point; zeros when absent (no interior point needed).
    pub x0: Option<Element>,
    /// Starting multiplier; zeros when absent.
    pub lambda0: Option<Vec<f64>>,
    /// Record cond(∇²_λη) at the first inner step of each outer round.
    pub collect_cond: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mu0: 0.1,
            rho0: 1.0,
            sigma: 0.5,
            rho_min: 1e-2,
            kappa: 0.25,
            tol: 1e-6,
            max_outer: 100,
            max_inner_per_outer: 1000,
            x0: None,
            lambda0: None,
            collect_cond: false,
        }
    }
}

impl SolverConfig {
    // negated comparisons are deliberate: NaN parameters must fail
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<(), SolveError> {
        let bad = |msg: &str| Err(SolveError::Config(msg.into()));
        if !(self.mu0 > 0.0) {
            return bad("mu0 must be positive");
        }
        if !(self.rho0 > 0.0) {
            return bad("rho0 must be positive");
        }
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return bad("sigma must lie in (0,1)");
        }
        if !(self.rho_min > 0.0 && self.rho_min <= self.rho0) {
            return bad("rho_min must lie in (0, rho0]");
        }
        if !(self.kappa > 0.0 && self.kappa < 1.0) {
            return bad("kappa must lie in (0,1)");
        }
        if !(self.tol > 0.0) {
            return bad("tol must be positive");
        }
        if self.max_outer == 0 || self.max_inner_per_outer == 0 {
            return bad("iteration limits must be at least 1");
        }
        Ok(())
    }
}

/// One row of the per-step log, appended once per inner Newton step.
#[derive(Clone, Debug)]
pub struct IterRecord {
    /// Outer iteration index.
    pub k: usize,
    /// Inner step index within outer round k.
    pub j: usize,
    pub mu: f64,
    pub rho: f64,
    /// Merit value δ at the pre-step iterate.
    pub delta: f64,
    /// Step length actually taken.
    pub alpha: f64,
    pub pinfeas: f64,
    pub dinfeas: f64,
    /// ‖x∘s‖ at the pre-step iterate.
    pub comp: f64,
    /// cond(∇²_λη), recorded on the first step of each outer round when
    /// requested.
    pub cond: Option<f64>,
    /// Diagonal shift the Cholesky factorization needed (usually 0).
    pub cholesky_shift: f64,
    /// Seconds since the solve started.
    pub wallclock: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    MaxOuterExceeded,
    NumericalFailure,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolveStatus::Optimal => write!(f, "Optimal"),
            SolveStatus::MaxOuterExceeded => write!(f, "MaxOuterExceeded"),
            SolveStatus::NumericalFailure => write!(f, "NumericalFailure"),
        }
    }
}


/// Final iterate and diagnostics of a solve.
#[derive(Clone, Debug)]
pub struct SolveOutput {
    pub status: SolveStatus,
    pub x: Element,
    pub lambda: Vec<f64>,
    pub s: Element,
    pub z: Element,
    /// ⟨c, x⟩ (problem-level constants excluded).
    pub objective_primal: f64,
    /// ⟨b, λ⟩; equals the primal objective at optimality.
    pub objective_dual: f64,
    pub duality_gap: f64,
    pub pinfeas: f64,
    pub dinfeas: f64,
    pub comp: f64,
    /// ‖𝒜x − b‖/(1+‖b‖); differs from pinfeas by the factor ρ at outer
    /// boundaries since x = z/ρ there.
    pub pinfeas_unscaled: f64,
    pub mu: f64,
    pub rho: f64,
    /// Outer rounds executed (each runs one inner Newton solve).
    pub outer_iters: usize,
    /// Total Newton steps taken; equals `records.len()`.
    pub total_newton: usize,
    pub records: Vec<IterRecord>,
    /// Present when status is NumericalFailure.
    pub failure: Option<String>,
}
