//! Condition-number instrumentation, the classical-IPM comparison
//! baseline, and benchmark statistics (shifted geometric means and
//! performance profiles).

mod stats;

pub use stats::{perf_profile, sgm, PerfProfile};

use thiserror::Error;

use crate::cones::{BlockKind, Element};
use crate::linalg::{LinalgError, ScmMatrix};
use crate::nal::{solve_with, SolveError, SolverConfig, StepProbe};
use crate::probio::Problem;

#[derive(Debug, Error)]
pub enum DiagError {
    #[error("operation only supports pure nonnegative-orthant cones")]
    ConeNotSupported,
    #[error("cond scan needs mu_start > mu_end > 0")]
    BadMuGrid,
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Problem class, used for the per-class shift and time-limit defaults.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemClass {
    Lp,
    Socp,
    Sdp,
}

impl ProblemClass {
    /// SGM time shift: 1 for LP, 10 for SOCP, 100 for SDP.
    pub fn shift(self) -> f64 {
        match self {
            ProblemClass::Lp => 1.0,
            ProblemClass::Socp => 10.0,
            ProblemClass::Sdp => 100.0,
        }
    }

    /// Failure time substitute: 3600 s for LP, 7200 s for SOCP,
    /// 43200 s for SDP.
    pub fn maxtime(self) -> f64 {
        match self {
            ProblemClass::Lp => 3600.0,
            ProblemClass::Socp => 7200.0,
            ProblemClass::Sdp => 43200.0,
        }
    }
}

impl std::str::FromStr for ProblemClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lp" => Ok(ProblemClass::Lp),
            "socp" => Ok(ProblemClass::Socp),
            "sdp" => Ok(ProblemClass::Sdp),
            other => Err(format!("unknown problem class `{other}`")),
        }
    }
}

/// Classical-IPM diagonal weight D = x/s for pure-LP cones, with entries
/// clipped to [1e-300, 1e300]. The comparison Schur complement is ADA*.
pub fn ipm_weight_lp(problem: &Problem, x: &Element, s: &Element) -> Result<Vec<f64>, DiagError> {
    if !problem
        .cone
        .blocks()
        .iter()
        .all(|b| matches!(b, BlockKind::Orthant(_)))
    {
        return Err(DiagError::ConeNotSupported);
    }
    Ok(x.as_slice()
        .iter()
        .zip(s.as_slice())
        .map(|(&xi, &si)| (xi / si).clamp(1e-300, 1e300))
        .collect())
}

/// One cond-scan row: condition numbers at the first Newton system of
/// outer round k.
#[derive(Clone, Debug)]
pub struct CondScanRow {
    pub k: usize,
    pub mu: f64,
    pub cond_nal: f64,
    /// cond(ADA*) with the classical diag(x/s) weight; LP cones only, and
    /// absent while x is not interior (the zero start).
    pub cond_ipm: Option<f64>,
}

/// Scan result: per-outer rows plus fitted log-log slopes and geometric
/// means.
#[derive(Clone, Debug)]
pub struct CondScanResult {
    pub rows: Vec<CondScanRow>,
    /// Least-squares slope of log10(cond_nal) against log10(μ) over rows
    /// with μ ≤ 1e-2; needs at least two such rows.
    pub slope_nal: Option<f64>,
    pub slope_ipm: Option<f64>,
    pub log10_gm_nal: f64,
    pub log10_gm_ipm: Option<f64>,
}

/// Run the solver from μ = `mu_start` down to `mu_end`, recording
/// condition numbers at the first inner step of every outer round.
pub fn cond_scan(
    problem: &Problem,
    base: &SolverConfig,
    mu_start: f64,
    mu_end: f64,
    compare_ipm: bool,
) -> Result<CondScanResult, DiagError> {
    if !(mu_start > mu_end && mu_end > 0.0) {
        return Err(DiagError::BadMuGrid);
    }
    let cfg = SolverConfig {
        mu0: mu_start,
        tol: mu_end,
        ..base.clone()
    };
    let lp_cone = problem
        .cone
        .blocks()
        .iter()
        .all(|b| matches!(b, BlockKind::Orthant(_)));

    let mut rows: Vec<CondScanRow> = Vec::new();
    let mut probe_err: Option<LinalgError> = None;
    solve_with(problem, &cfg, |p: &StepProbe<'_>| {
        // one row per outer round (the terminal polish re-enters with
        // inner == 0 at the same k)
        if p.inner != 0 || probe_err.is_some() || rows.last().is_some_and(|r| r.k == p.outer) {
            return;
        }
        let cond_nal = match p.scm.cond_number() {
            Ok(v) => v,
            Err(e) => {
                probe_err = Some(e);
                return;
            }
        };
        let cond_ipm = if compare_ipm && lp_cone {
            match ipm_weight_lp(problem, p.x, &p.pair.s) {
                Ok(d) if p.x.as_slice().iter().all(|&v| v > 0.0) => problem
                    .a
                    .weighted_gram(&d)
                    .ok()
                    .map(ScmMatrix::from_dense)
                    .and_then(|m| m.cond_number().ok()),
                _ => None,
            }
        } else {
            None
        };
        rows.push(CondScanRow {
            k: p.outer,
            mu: p.mu,
            cond_nal,
            cond_ipm,
        });
    })?;
    if let Some(e) = probe_err {
        return Err(DiagError::Linalg(e));
    }

    let slope_nal = fit_slope(rows.iter().map(|r| (r.mu, Some(r.cond_nal))));
    let slope_ipm = fit_slope(rows.iter().map(|r| (r.mu, r.cond_ipm)));
    let log10_gm_nal = log10_geometric_mean(rows.iter().map(|r| Some(r.cond_nal)));
    let log10_gm_ipm = {
        let any = rows.iter().any(|r| r.cond_ipm.is_some());
        if any {
            Some(log10_geometric_mean(rows.iter().map(|r| r.cond_ipm)))
        } else {
            None
        }
    };
    Ok(CondScanResult {
        rows,
        slope_nal,
        slope_ipm,
        log10_gm_nal,
        log10_gm_ipm,
    })
}

/// Slope of log10(cond) vs log10(μ), restricted to μ ≤ 1e-2 to skip the
/// pre-asymptotic head.
fn fit_slope(rows: impl Iterator<Item = (f64, Option<f64>)>) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .filter(|(mu, v)| *mu <= 1e-2 && v.is_some())
        .map(|(mu, v)| (mu.log10(), v.unwrap().log10()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

fn log10_geometric_mean(values: impl Iterator<Item = Option<f64>>) -> f64 {
    let logs: Vec<f64> = values.flatten().map(|v| v.log10()).collect();
    if logs.is_empty() {
        return f64::NAN;
    }
    logs.iter().sum::<f64>() / logs.len() as f64
}

// CSV writers with exact headers; floats carry 17 significant digits.

pub fn write_condscan_csv(problem: &str, result: &CondScanResult) -> String {
    let mut out = String::from("problem,k,mu,cond_nal,cond_ipm\n");
    for row in &result.rows {
        let ipm = row
            .cond_ipm
            .map(|v| format!("{v:.16e}"))
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{:.16e},{:.16e},{}\n",
            problem, row.k, row.mu, row.cond_nal, ipm
        ));
    }
    out
}

/// One sgm.csv row.
pub struct SgmRow {
    pub class: String,
    pub solver: String,
    pub sgm: f64,
    pub solved_fraction: f64,
}

pub fn write_sgm_csv(rows: &[SgmRow]) -> String {
    let mut out = String::from("class,solver,sgm,solved_fraction\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{:.16e},{:.16e}\n",
            r.class, r.solver, r.sgm, r.solved_fraction
        ));
    }
    out
}

pub fn write_profile_csv(solvers: &[String], profile: &PerfProfile) -> String {
    let mut out = String::from("solver,tau,rho\n");
    for (s, curve) in solvers.iter().zip(&profile.rho) {
        for (tau, rho) in profile.taus.iter().zip(curve) {
            out.push_str(&format!("{},{:.16e},{:.16e}\n", s, tau, rho));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::ConeDesc;
    use crate::linalg::LinearMap;
    use crate::probio::{gen_random_lp, rng::Rng};

    #[test]
    fn ipm_weight_examples() {
        let cone = ConeDesc::single(BlockKind::Orthant(2));
        let a = LinearMap::from_triplets(1, 2, &[(0, 0, 1.0), (0, 1, 1.0)]).unwrap();
        let p = Problem::new("lp", cone, a, vec![1.0], Element::zeros(2)).unwrap();

        let x = Element::from_vec(vec![0.5, 0.5]);
        let d = ipm_weight_lp(&p, &x, &x).unwrap();
        assert_eq!(d, vec![1.0, 1.0]);

        let d = ipm_weight_lp(
            &p,
            &Element::from_vec(vec![2.0, 1.0]),
            &Element::from_vec(vec![1.0, 2.0]),
        )
        .unwrap();
        assert_eq!(d, vec![2.0, 0.5]);
    }

    #[test]
    fn ipm_weight_clips_extreme_ratios() {
        let cone = ConeDesc::single(BlockKind::Orthant(2));
        let a = LinearMap::from_triplets(1, 2, &[(0, 0, 1.0)]).unwrap();
        let p = Problem::new("lp", cone, a, vec![0.0], Element::zeros(2)).unwrap();
        let d = ipm_weight_lp(
            &p,
            &Element::from_vec(vec![1e306, 1e-306]),
            &Element::from_vec(vec![1e-306, 1e306]),
        )
        .unwrap();
        assert_eq!(d, vec![1e300, 1e-300]);
    }

    #[test]
    fn ipm_weight_rejects_non_lp_cones() {
        let cone = ConeDesc::single(BlockKind::SecondOrder(3));
        let a = LinearMap::from_triplets(1, 3, &[(0, 0, 1.0)]).unwrap();
        let p = Problem::new("soc", cone, a, vec![0.0], Element::zeros(3)).unwrap();
        assert!(matches!(
            ipm_weight_lp(&p, &Element::zeros(3), &Element::zeros(3)),
            Err(DiagError::ConeNotSupported)
        ));
    }

    #[test]
    fn simulated_central_path_has_ipm_slope_near_minus_two() {
        // basic coordinates settle at x*, nonbasic at s*; x_i s_i = μ
        let mut rng = Rng::new(8);
        let m = 6;
        let n = 18;
        let lp = gen_random_lp(m, n, 8).unwrap();
        let xstar: Vec<f64> = (0..n).map(|_| rng.uniform(0.5, 2.0)).collect();
        let basic: Vec<bool> = (0..n).map(|i| i < n / 3).collect();
        let mut pts = Vec::new();
        for e in 1..=6 {
            let mu = 10f64.powi(-e);
            let d: Vec<f64> = (0..n)
                .map(|i| {
                    let (xi, si) = if basic[i] {
                        (xstar[i], mu / xstar[i])
                    } else {
                        (mu / xstar[i], xstar[i])
                    };
                    xi / si
                })
                .collect();
            let cond = ScmMatrix::from_dense(lp.a.weighted_gram(&d).unwrap())
                .cond_number()
                .unwrap();
            pts.push((mu, Some(cond)));
        }
        let slope = fit_slope(pts.into_iter()).unwrap();
        assert!(slope <= -1.6, "ipm slope {slope}");
    }

    #[test]
    fn fit_slope_recovers_exact_powers() {
        let pts = (1..=6).map(|e| {
            let mu = 10f64.powi(-e);
            (mu, Some(42.0 / mu)) // cond ∝ μ⁻¹
        });
        let slope = fit_slope(pts).unwrap();
        assert!((slope + 1.0).abs() < 1e-9);
    }

    #[test]
    fn csv_headers_are_exact() {
        let result = CondScanResult {
            rows: vec![CondScanRow {
                k: 0,
                mu: 0.1,
                cond_nal: 10.0,
                cond_ipm: None,
            }],
            slope_nal: None,
            slope_ipm: None,
            log10_gm_nal: 1.0,
            log10_gm_ipm: None,
        };
        let csv = write_condscan_csv("toy", &result);
        assert!(csv.starts_with("problem,k,mu,cond_nal,cond_ipm\n"));
        assert!(csv.lines().nth(1).unwrap().starts_with("toy,0,"));

        let sgm_csv = write_sgm_csv(&[SgmRow {
            class: "lp".into(),
            solver: "nal".into(),
            sgm: 1.0,
            solved_fraction: 1.0,
        }]);
        assert!(sgm_csv.starts_with("class,solver,sgm,solved_fraction\n"));

        let profile = perf_profile(&[vec![1.0, 2.0]]);
        let pcsv = write_profile_csv(&["nal".to_string()], &profile);
        assert!(pcsv.starts_with("solver,tau,rho\n"));
    }

    #[test]
    fn class_defaults_follow_protocol() {
        assert_eq!(ProblemClass::Sdp.shift(), 100.0);
        assert_eq!(ProblemClass::Socp.shift(), 10.0);
        assert_eq!(ProblemClass::Lp.shift(), 1.0);
        assert_eq!(ProblemClass::Lp.maxtime(), 3600.0);
        assert_eq!(ProblemClass::Socp.maxtime(), 7200.0);
        assert_eq!(ProblemClass::Sdp.maxtime(), 43200.0);
    }

    #[test]
    fn cond_scan_rows_match_fresh_eigensolves() {
        let lp = gen_random_lp(5, 15, 3).unwrap();
        let result = cond_scan(&lp, &SolverConfig::default(), 1e-1, 1e-3, true).unwrap();
        assert!(!result.rows.is_empty());
        // strictly decreasing μ down the rows
        for w in result.rows.windows(2) {
            assert!(w[1].mu < w[0].mu);
        }
        for row in &result.rows {
            assert!(row.cond_nal >= 1.0);
            if let Some(ci) = row.cond_ipm {
                assert!(ci >= 1.0);
            }
        }
        // internal consistency: recompute the first row's cond from a
        // fresh solve probe
        let mut first: Option<f64> = None;
        let cfg = SolverConfig {
            mu0: 1e-1,
            tol: 1e-3,
            ..SolverConfig::default()
        };
        crate::nal::solve_with(&lp, &cfg, |p| {
            if p.outer == 0 && p.inner == 0 && first.is_none() {
                first = Some(p.scm.cond_number().unwrap());
            }
        })
        .unwrap();
        let rel = (first.unwrap() - result.rows[0].cond_nal).abs() / result.rows[0].cond_nal;
        assert!(rel < 1e-8);
    }
}
