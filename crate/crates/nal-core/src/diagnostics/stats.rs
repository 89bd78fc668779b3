//! Benchmark statistics: shifted geometric means of runtimes and
//! Dolan-Moré performance profiles.

/// Shifted geometric mean (Π(tᵢ+sh))^{1/n} − sh, computed in log space.
/// Failures must be encoded as the class MAXTIME before calling.
pub fn sgm(times: &[f64], sh: f64) -> f64 {
    assert!(!times.is_empty(), "sgm needs at least one runtime");
    let mean_log = times.iter().map(|t| (t + sh).ln()).sum::<f64>() / times.len() as f64;
    mean_log.exp() - sh
}

/// Performance profile curves ρ_s(τ) over the ratio grid.
#[derive(Clone, Debug)]
pub struct PerfProfile {
    /// Ascending ratio grid; starts at 1.
    pub taus: Vec<f64>,
    /// One nondecreasing step curve per solver, aligned with `taus`.
    pub rho: Vec<Vec<f64>>,
}

impl PerfProfile {
    /// ρ_s(τ) for one solver by step lookup.
    pub fn rho_at(&self, solver: usize, tau: f64) -> f64 {
        let mut best = 0.0;
        for (t, r) in self.taus.iter().zip(&self.rho[solver]) {
            if *t <= tau {
                best = *r;
            }
        }
        best
    }
}

/// Build profiles from a solvers × problems runtime matrix; failures are
/// `f64::INFINITY`. Ratios are r_{s,p} = t_{s,p}/min_s t_{s,p} and
/// ρ_s(τ) is the fraction of problems with r_{s,p} ≤ τ.
pub fn perf_profile(times: &[Vec<f64>]) -> PerfProfile {
    let solvers = times.len();
    assert!(solvers >= 1, "profile needs at least one solver");
    let problems = times[0].len();
    assert!(
        times.iter().all(|row| row.len() == problems),
        "ragged time matrix"
    );
    assert!(problems >= 1, "profile needs at least one problem");

    let mut ratios = vec![vec![f64::INFINITY; problems]; solvers];
    for p in 0..problems {
        let best = (0..solvers)
            .map(|s| times[s][p])
            .fold(f64::INFINITY, f64::min);
        for s in 0..solvers {
            let t = times[s][p];
            if t.is_finite() && best.is_finite() && best > 0.0 {
                ratios[s][p] = t / best;
            } else if t.is_finite() && best == 0.0 {
                // zero best time: count exact zeros as ratio 1
                ratios[s][p] = if t == 0.0 { 1.0 } else { f64::INFINITY };
            }
        }
    }

    let mut taus: Vec<f64> = ratios
        .iter()
        .flatten()
        .copied()
        .filter(|r| r.is_finite())
        .collect();
    taus.push(1.0);
    taus.sort_by(f64::total_cmp);
    taus.dedup();

    let rho = ratios
        .iter()
        .map(|rs| {
            taus.iter()
                .map(|&tau| rs.iter().filter(|&&r| r <= tau).count() as f64 / problems as f64)
                .collect()
        })
        .collect();
    PerfProfile { taus, rho }
}
