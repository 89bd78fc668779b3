//! Outer loop (μ/ρ schedule and proximal x-update) around the Newton
//! inner solver, plus the KKT residual measures.
//!
//! Outer round k solves λ ≈ argmin η(x⁽ᵏ⁾, ·; μ⁽ᵏ⁾, ρ⁽ᵏ⁾), declares
//! optimality when max{pinfeas, dinfeas, μ} ≤ tol, and otherwise updates
//! x ← z/ρ, μ ← σμ, ρ ← max{ρ/2, ρ_min}.

use std::time::Instant;

use super::{
    compute_sz, grad_eta, newton_step, step_length, CentralPair, IterRecord, SolveError,
    SolveOutput, SolveStatus, SolverConfig,
};
use crate::cones::Element;
use crate::probio::Problem;

/// Relative primal/dual infeasibility and complementarity at a state.
#[derive(Clone, Copy, Debug)]
pub struct Residuals {
    /// ‖𝒜z − ρb‖/(1+‖b‖).
    pub pinfeas: f64,
    /// ‖𝒜*λ + s − c‖/(1+‖c‖).
    pub dinfeas: f64,
    /// ‖x∘s‖.
    pub comp: f64,
    /// ‖𝒜x − b‖/(1+‖b‖).
    pub pinfeas_unscaled: f64,
}

/// Residual measures of the current state (x, λ) with its central pair.
pub fn residuals(
    problem: &Problem,
    x: &Element,
    lambda: &[f64],
    pair: &CentralPair,
    rho: f64,
) -> Result<Residuals, SolveError> {
    let cone = &problem.cone;
    let norm_b = problem.b.iter().map(|v| v * v).sum::<f64>().sqrt();
    let norm_c = cone.norm(&problem.c);

    let az = problem.a.apply(&pair.z)?;
    let pinf = az
        .iter()
        .zip(&problem.b)
        .map(|(a, b)| (a - rho * b) * (a - rho * b))
        .sum::<f64>()
        .sqrt()
        / (1.0 + norm_b);

    let mut rd = problem.a.apply_adjoint(cone, lambda)?;
    rd.axpy(1.0, &pair.s);
    rd.axpy(-1.0, &problem.c);
    let dinf = cone.norm(&rd) / (1.0 + norm_c);

    let comp = cone.norm(&cone.jordan_product(x, &pair.s)?);

    let ax = problem.a.apply(x)?;
    let pinf_raw = ax
        .iter()
        .zip(&problem.b)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
        / (1.0 + norm_b);

    Ok(Residuals {
        pinfeas: pinf,
        dinfeas: dinf,
        comp,
        pinfeas_unscaled: pinf_raw,
    })
}

/// Snapshot handed to solve observers at every assembled Newton system.
pub struct StepProbe<'a> {
    pub outer: usize,
    pub inner: usize,
    pub mu: f64,
    pub rho: f64,
    pub x: &'a Element,
    pub lambda: &'a [f64],
    pub pair: &'a CentralPair,
    pub scm: &'a crate::linalg::ScmMatrix,
    pub delta: f64,
}

/// Result of one inner Newton solve.
#[derive(Debug)]
pub struct InnerSolve {
    pub lambda: Vec<f64>,
    pub pair: CentralPair,
    pub records: Vec<IterRecord>,
    pub newton_steps: usize,
}

/// Number of μ ← σμ updates until μ ≤ target, starting from μ0.
pub fn outer_iterations_to_reach(mu0: f64, sigma: f64, target: f64) -> usize {
    let mut mu = mu0;
    let mut k = 0;
    while mu > target {
        mu *= sigma;
        k += 1;
    }
    k
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[allow(clippy::too_many_arguments)]
fn inner_loop(
    problem: &Problem,
    cfg: &SolverConfig,
    x: &Element,
    lambda0: &[f64],
    mu: f64,
    rho: f64,
    outer: usize,
    j_start: usize,
    clock: &Instant,
    probe: &mut dyn FnMut(&StepProbe<'_>),
) -> Result<InnerSolve, SolveError> {
    let mut lambda = lambda0.to_vec();
    let mut records = Vec::new();
    let mut j = j_start;
    loop {
        let pair = compute_sz(problem, x, &lambda, mu, rho)?;
        let grad = grad_eta(problem, &pair, rho);
        let step = newton_step(problem, &pair, &grad, mu, rho)?;
        probe(&StepProbe {
            outer,
            inner: j,
            mu,
            rho,
            x,
            lambda: &lambda,
            pair: &pair,
            scm: &step.scm,
            delta: step.delta,
        });

        // Step 3: δ ≤ κ at the first outer round, δ ≤ min{κ, κ̂} afterwards,
        // with κ̂ = 1/(√(ρμ)‖λ‖₂) read as +∞ at λ = 0.
        let threshold = if outer == 0 {
            cfg.kappa
        } else {
            let nl = norm2(&lambda);
            if nl == 0.0 {
                cfg.kappa
            } else {
                cfg.kappa.min(1.0 / ((rho * mu).sqrt() * nl))
            }
        };
        if step.delta <= threshold {
            return Ok(InnerSolve {
                lambda,
                pair,
                records,
                newton_steps: j - j_start,
            });
        }
        if j - j_start >= cfg.max_inner_per_outer {
            return Err(SolveError::MaxInnerExceeded {
                outer,
                max: cfg.max_inner_per_outer,
                records,
            });
        }

        let res = residuals(problem, x, &lambda, &pair, rho)?;
        let alpha = step_length(step.delta);
        for (l, d) in lambda.iter_mut().zip(&step.delta_lambda) {
            *l += alpha * d;
        }
        let cond = if cfg.collect_cond && j == 0 {
            step.scm.cond_number().ok()
        } else {
            None
        };
        records.push(IterRecord {
            k: outer,
            j,
            mu,
            rho,
            delta: step.delta,
            alpha,
            pinfeas: res.pinfeas,
            dinfeas: res.dinfeas,
            comp: res.comp,
            cond,
            cholesky_shift: step.cholesky_shift,
            wallclock: clock.elapsed().as_secs_f64(),
        });
        j += 1;
    }
}

/// One inner Newton solve (Algorithm-2 loop) in isolation.
pub fn inner_solve(
    problem: &Problem,
    cfg: &SolverConfig,
    x: &Element,
    lambda0: &[f64],
    mu: f64,
    rho: f64,
    outer: usize,
) -> Result<InnerSolve, SolveError> {
    inner_loop(
        problem,
        cfg,
        x,
        lambda0,
        mu,
        rho,
        outer,
        0,
        &Instant::now(),
        &mut |_| {},
    )
}

/// Solve the problem with the default (no-op) observer.
pub fn solve(problem: &Problem, cfg: &SolverConfig) -> Result<SolveOutput, SolveError> {
    solve_with(problem, cfg, |_| {})
}

/// Solve with an observer that sees every assembled Newton system.
pub fn solve_with(
    problem: &Problem,
    cfg: &SolverConfig,
    mut probe: impl FnMut(&StepProbe<'_>),
) -> Result<SolveOutput, SolveError> {
    cfg.validate()?;
    problem.validate()?;
    let n = problem.cone.vec_len();
    let m = problem.rows();
    if let Some(x0) = &cfg.x0 {
        if x0.len() != n {
            return Err(SolveError::Config(format!(
                "x0 has length {}, expected {n}",
                x0.len()
            )));
        }
    }
    if let Some(l0) = &cfg.lambda0 {
        if l0.len() != m {
            return Err(SolveError::Config(format!(
                "lambda0 has length {}, expected {m}",
                l0.len()
            )));
        }
    }

    let clock = Instant::now();
    let mut x = cfg.x0.clone().unwrap_or_else(|| Element::zeros(n));
    let mut lambda = cfg.lambda0.clone().unwrap_or_else(|| vec![0.0; m]);
    let mut mu = cfg.mu0;
    let mut rho = cfg.rho0;
    let mut records: Vec<IterRecord> = Vec::new();
    let mut total_newton = 0;

    for k in 0..cfg.max_outer {
        let inner = match inner_loop(
            problem, cfg, &x, &lambda, mu, rho, k, 0, &clock, &mut probe,
        ) {
            Ok(done) => done,
            Err(SolveError::MaxInnerExceeded {
                outer,
                max,
                records: inner_records,
            }) => {
                total_newton += inner_records.len();
                records.extend(inner_records);
                let pair = compute_sz(problem, &x, &lambda, mu, rho)?;
                return finish(
                    problem,
                    SolveStatus::NumericalFailure,
                    x,
                    lambda,
                    pair,
                    mu,
                    rho,
                    k + 1,
                    total_newton,
                    records,
                    Some(format!(
                        "inner Newton loop exceeded {max} steps at outer iteration {outer}"
                    )),
                );
            }
            Err(SolveError::Linalg(e)) => {
                let pair = compute_sz(problem, &x, &lambda, mu, rho)?;
                return finish(
                    problem,
                    SolveStatus::NumericalFailure,
                    x,
                    lambda,
                    pair,
                    mu,
                    rho,
                    k + 1,
                    total_newton,
                    records,
                    Some(format!("linear algebra failure at outer iteration {k}: {e}")),
                );
            }
            Err(other) => return Err(other),
        };

        total_newton += inner.records.len();
        records.extend(inner.records);
        lambda = inner.lambda;
        let pair = inner.pair;

        // Step 3: stop once max{pinfeas, dinfeas, μ} ≤ tol.
        let res = residuals(problem, &x, &lambda, &pair, rho)?;
        let next_x = pair.z.scaled(1.0 / rho);
        if res.pinfeas.max(res.dinfeas).max(mu) <= cfg.tol {
            // Polish: re-enter the inner loop with a tight merit target so
            // the reported primal z/ρ is not limited by κ; the gradient
            // contracts quadratically from here, so this costs a handful
            // of steps. Kept only if the stopping test still holds.
            let polish_cfg = SolverConfig {
                kappa: (cfg.tol * 1e-3).max(1e-12),
                max_inner_per_outer: 16,
                ..cfg.clone()
            };
            // continue the inner step numbering so records stay
            // monotone in (k, j)
            if let Ok(polished) = inner_loop(
                problem,
                &polish_cfg,
                &x,
                &lambda,
                mu,
                rho,
                k,
                inner.newton_steps,
                &clock,
                &mut probe,
            ) {
                let pres = residuals(problem, &x, &polished.lambda, &polished.pair, rho)?;
                if pres.pinfeas.max(pres.dinfeas).max(mu) <= cfg.tol {
                    total_newton += polished.records.len();
                    records.extend(polished.records);
                    let next_x = polished.pair.z.scaled(1.0 / rho);
                    return finish(
                        problem,
                        SolveStatus::Optimal,
                        next_x,
                        polished.lambda,
                        polished.pair,
                        mu,
                        rho,
                        k + 1,
                        total_newton,
                        records,
                        None,
                    );
                }
            }
            return finish(
                problem,
                SolveStatus::Optimal,
                next_x,
                lambda,
                pair,
                mu,
                rho,
                k + 1,
                total_newton,
                records,
                None,
            );
        }

        if k + 1 == cfg.max_outer {
            return finish(
                problem,
                SolveStatus::MaxOuterExceeded,
                next_x,
                lambda,
                pair,
                mu,
                rho,
                k + 1,
                total_newton,
                records,
                None,
            );
        }

        // Step 4.
        x = next_x;
        mu *= cfg.sigma;
        rho = (0.5 * rho).max(cfg.rho_min);
    }
    unreachable!("loop always returns by max_outer")
}

#[allow(clippy::too_many_arguments)]
fn finish(
    problem: &Problem,
    status: SolveStatus,
    x: Element,
    lambda: Vec<f64>,
    pair: CentralPair,
    mu: f64,
    rho: f64,
    outer_iters: usize,
    total_newton: usize,
    records: Vec<IterRecord>,
    failure: Option<String>,
) -> Result<SolveOutput, SolveError> {
    let res = residuals(problem, &x, &lambda, &pair, rho)?;
    let objective_primal = problem.cone.dot(&problem.c, &x);
    let objective_dual: f64 = problem.b.iter().zip(&lambda).map(|(b, l)| b * l).sum();
    Ok(SolveOutput {
        status,
        objective_primal,
        objective_dual,
        duality_gap: (objective_primal - objective_dual).abs(),
        pinfeas: res.pinfeas,
        dinfeas: res.dinfeas,
        comp: res.comp,
        pinfeas_unscaled: res.pinfeas_unscaled,
        x,
        lambda,
        s: pair.s,
        z: pair.z,
        mu,
        rho,
        outer_iters,
        total_newton,
        records,
        failure,
    })
}
