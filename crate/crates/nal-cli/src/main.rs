//! Command-line front end: solve conic programs, generate benchmark
//! instances, scan condition numbers, and aggregate benchmark statistics.
//!
//! Exit codes: 0 success/Optimal, 2 MaxOuterExceeded, 3 parse/validation
//! error, 4 numerical failure. Every run prints one final status line to
//! stderr. `NAL_DEBUG=1` enables the dual merit-formula cross-check and
//! per-step invariant assertions inside the solver.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use nal_core::diagnostics::{
    perf_profile, sgm, write_condscan_csv, write_profile_csv, write_sgm_csv, ProblemClass, SgmRow,
};
use nal_core::nal::{solve, SolveOutput, SolveStatus, SolverConfig};
use nal_core::probio::{
    gen_degenerate_lp, gen_maxcut_sdp, gen_meb, gen_random_lp, gen_sqrt_lasso, parse_mps_lp,
    parse_nalp, write_nalp,
    Problem,
};

const EXIT_OK: u8 = 0;
const EXIT_MAX_OUTER: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

#[derive(Parser)]
#[command(name = "nal", about = "Newton augmented Lagrangian solver for symmetric cone programs", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file (.nalp or .mps) and report a JSON result.
    Solve(SolveArgs),
    /// Generate a benchmark instance and write it as a .nalp file.
    Gen(GenArgs),
    /// Record SCM condition numbers along a solve.
    Condscan(CondscanArgs),
    /// Solve every problem in a directory and emit SGM/profile CSVs.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolverFlags {
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 0.1)]
    mu0: f64,
    #[arg(long, default_value_t = 1.0)]
    rho0: f64,
    #[arg(long, default_value_t = 0.5)]
    sigma: f64,
    #[arg(long = "rho-min", default_value_t = 1e-2)]
    rho_min: f64,
    #[arg(long, default_value_t = 0.25)]
    kappa: f64,
    #[arg(long = "max-outer", default_value_t = 100)]
    max_outer: usize,
}

impl SolverFlags {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            mu0: self.mu0,
            rho0: self.rho0,
            sigma: self.sigma,
            rho_min: self.rho_min,
            kappa: self.kappa,
            tol: self.tol,
            max_outer: self.max_outer,
            ..SolverConfig::default()
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: PathBuf,
    #[command(flatten)]
    flags: SolverFlags,
    /// Write the per-step iteration log as CSV.
    #[arg(long)]
    log: Option<PathBuf>,
    /// Write the machine-readable result as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// meb | lasso | maxcut | lp
    #[arg(long)]
    family: String,
    /// Comma-separated k=v size parameters (e.g. n=2,d=1).
    #[arg(long, default_value = "")]
    params: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CondscanArgs {
    #[arg(long)]
    problem: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Also record the classical diag(x/s) baseline (LP cones only).
    #[arg(long = "compare-ipm", default_value_t = false)]
    compare_ipm: bool,
    #[arg(long = "mu-start", default_value_t = 1e-1)]
    mu_start: f64,
    #[arg(long = "mu-end", default_value_t = 1e-5)]
    mu_end: f64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    dir: PathBuf,
    #[arg(long = "out-prefix")]
    out_prefix: String,
    /// lp | socp | sdp; sets the SGM shift and failure time.
    #[arg(long)]
    class: ProblemClass,
    /// Solve this many problems concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// External timing CSVs (`solver,problem,seconds`; inf = failure).
    #[arg(long = "times-from")]
    times_from: Vec<PathBuf>,
    #[command(flatten)]
    flags: SolverFlags,
}

/// Frozen machine-readable result schema.
#[derive(Serialize)]
struct JsonResult {
    schema: u32,
    status: String,
    objective_primal: f64,
    objective_dual: f64,
    pinfeas: f64,
    dinfeas: f64,
    comp: f64,
    outer_iters: usize,
    newton_iters: usize,
    seconds: f64,
}

fn status_line(out: &SolveOutput, seconds: f64) -> String {
    format!(
        "status={} objective={:.9e} dual={:.9e} pinfeas={:.3e} dinfeas={:.3e} pinfeas_unscaled={:.3e} outer={} newton={} ({seconds:.3} s)",
        out.status,
        out.objective_primal,
        out.objective_dual,
        out.pinfeas,
        out.dinfeas,
        out.pinfeas_unscaled,
        out.outer_iters,
        out.total_newton
    )
}

fn load_problem(path: &Path) -> Result<Problem, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase();
    let problem = match ext.as_str() {
        "mps" => parse_mps_lp(&text).map_err(|e| format!("{}: {e}", path.display()))?,
        _ => {
            // the NALP grammar carries no name; use the file stem
            let mut p = parse_nalp(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                p.name = stem.to_string();
            }
            p
        }
    };
    problem
        .validate()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(problem)
}

fn exit_for(status: SolveStatus) -> u8 {
    match status {
        SolveStatus::Optimal => EXIT_OK,
        SolveStatus::MaxOuterExceeded => EXIT_MAX_OUTER,
        SolveStatus::NumericalFailure => EXIT_NUMERICAL,
    }
}

fn iteration_log_csv(out: &SolveOutput) -> String {
    let mut csv =
        String::from("k,j,mu,rho,delta,alpha,pinfeas,dinfeas,comp,cond,cholesky_shift,wallclock\n");
    for r in &out.records {
        let cond = r.cond.map(|v| format!("{v:.16e}")).unwrap_or_default();
        let _ = writeln!(
            csv,
            "{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{:.16e},{:.16e}",
            r.k,
            r.j,
            r.mu,
            r.rho,
            r.delta,
            r.alpha,
            r.pinfeas,
            r.dinfeas,
            r.comp,
            cond,
            r.cholesky_shift,
            r.wallclock
        );
    }
    csv
}

fn cmd_solve(args: &SolveArgs) -> Result<u8, String> {
    let problem = load_problem(&args.problem)?;
    let cfg = args.flags.config();
    let started = Instant::now();
    let out = solve(&problem, &cfg).map_err(|e| format!("solve failed: {e}"))?;
    let seconds = started.elapsed().as_secs_f64();

    if let Some(path) = &args.log {
        std::fs::write(path, iteration_log_csv(&out))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    if let Some(path) = &args.json {
        let result = JsonResult {
            schema: 1,
            status: out.status.to_string(),
            objective_primal: out.objective_primal + problem.meta.objective_constant,
            objective_dual: out.objective_dual + problem.meta.objective_constant,
            pinfeas: out.pinfeas,
            dinfeas: out.dinfeas,
            comp: out.comp,
            outer_iters: out.outer_iters,
            newton_iters: out.total_newton,
            seconds,
        };
        let body = serde_json::to_string_pretty(&result).expect("serializable");
        std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    eprintln!("{}", status_line(&out, seconds));
    if let Some(f) = &out.failure {
        eprintln!("failure: {f}");
    }
    Ok(exit_for(out.status))
}

fn parse_params(spec: &str) -> Result<std::collections::HashMap<String, f64>, String> {
    let mut map = std::collections::HashMap::new();
    for piece in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = piece
            .split_once('=')
            .ok_or_else(|| format!("bad parameter `{piece}`, expected k=v"))?;
        let value: f64 = v
            .trim()
            .parse()
            .map_err(|_| format!("bad numeric value in `{piece}`"))?;
        map.insert(k.trim().to_string(), value);
    }
    Ok(map)
}

fn param(
    map: &std::collections::HashMap<String, f64>,
    key: &str,
    default: Option<f64>,
) -> Result<f64, String> {
    match (map.get(key), default) {
        (Some(v), _) => Ok(*v),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(format!("missing required parameter `{key}`")),
    }
}

fn cmd_gen(args: &GenArgs) -> Result<u8, String> {
    let params = parse_params(&args.params)?;
    let problem = match args.family.as_str() {
        "meb" => {
            let n = param(&params, "n", None)? as usize;
            let d = param(&params, "d", None)? as usize;
            gen_meb(n, d, args.seed)
        }
        "lasso" => {
            let m = param(&params, "m", None)? as usize;
            let n = param(&params, "n", None)? as usize;
            let lambda = param(&params, "lambda", Some(1.0))?;
            gen_sqrt_lasso(m, n, lambda, args.seed)
        }
        "maxcut" => {
            let p = param(&params, "p", None)? as usize;
            gen_maxcut_sdp(p, args.seed)
        }
        "lp" => {
            let m = param(&params, "m", None)? as usize;
            let n = param(&params, "n", None)? as usize;
            gen_random_lp(m, n, args.seed)
        }
        // planted degenerate optimum; the instance family behind
        // condition-number growth studies
        "deglp" => {
            let m = param(&params, "m", None)? as usize;
            let n = param(&params, "n", None)? as usize;
            gen_degenerate_lp(m, n, args.seed)
        }
        other => return Err(format!("unknown family `{other}` (meb|lasso|maxcut|lp|deglp)")),
    }
    .map_err(|e| e.to_string())?;
    std::fs::write(&args.out, write_nalp(&problem))
        .map_err(|e| format!("cannot write {}: {e}", args.out.display()))?;
    eprintln!(
        "status=Generated family={} seed={} rows={} vec_len={} -> {}",
        args.family,
        args.seed,
        problem.rows(),
        problem.cone.vec_len(),
        args.out.display()
    );
    Ok(EXIT_OK)
}

fn cmd_condscan(args: &CondscanArgs) -> Result<u8, String> {
    let problem = load_problem(&args.problem)?;
    let cfg = SolverConfig::default();
    let scan = nal_core::diagnostics::cond_scan(
        &problem,
        &cfg,
        args.mu_start,
        args.mu_end,
        args.compare_ipm,
    )
    .map_err(|e| format!("condscan failed: {e}"))?;
    std::fs::write(&args.out, write_condscan_csv(&problem.name, &scan))
        .map_err(|e| format!("cannot write {}: {e}", args.out.display()))?;
    eprintln!(
        "status=Scanned rows={} slope_nal={} slope_ipm={} log10_gm={:.3}",
        scan.rows.len(),
        scan.slope_nal.map(|s| format!("{s:.3}")).unwrap_or_else(|| "-".into()),
        scan.slope_ipm.map(|s| format!("{s:.3}")).unwrap_or_else(|| "-".into()),
        scan.log10_gm_nal
    );
    Ok(EXIT_OK)
}

fn read_external_times(path: &Path) -> Result<(String, Vec<(String, f64)>), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut solver = String::new();
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 && line.trim().eq_ignore_ascii_case("solver,problem,seconds") {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("{}:{}: expected solver,problem,seconds", path.display(), i + 1));
        }
        if solver.is_empty() {
            solver = parts[0].trim().to_string();
        }
        let secs = match parts[2].trim() {
            "" | "inf" | "Inf" | "INF" => f64::INFINITY,
            v => v
                .parse()
                .map_err(|_| format!("{}:{}: bad seconds `{v}`", path.display(), i + 1))?,
        };
        rows.push((parts[1].trim().to_string(), secs));
    }
    if solver.is_empty() {
        return Err(format!("{}: no timing rows", path.display()));
    }
    Ok((solver, rows))
}

fn cmd_bench(args: &BenchArgs) -> Result<u8, String> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&args.dir)
        .map_err(|e| format!("cannot read {}: {e}", args.dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            matches!(
                p.extension().and_then(|e| e.to_str()),
                Some("nalp") | Some("mps")
            )
        })
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(format!("no .nalp or .mps files in {}", args.dir.display()));
    }

    let cfg = args.flags.config();
    let run_one = |path: &PathBuf| -> (String, Option<f64>) {
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("problem")
            .to_string();
        let outcome = load_problem(path).ok().and_then(|problem| {
            let started = Instant::now();
            match solve(&problem, &cfg) {
                Ok(out) if out.status == SolveStatus::Optimal => {
                    Some(started.elapsed().as_secs_f64())
                }
                _ => None,
            }
        });
        (stem, outcome)
    };

    let results: Vec<(String, Option<f64>)> = if args.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| {
            use rayon::prelude::*;
            paths.par_iter().map(run_one).collect()
        })
    } else {
        paths.iter().map(run_one).collect()
    };

    let maxtime = args.class.maxtime();
    let sh = args.class.shift();
    let class_name = format!("{:?}", args.class).to_lowercase();

    // our solver's rows, failures encoded as MAXTIME for SGM and +inf for
    // the profile
    let mut solver_names = vec!["nal".to_string()];
    let mut sgm_rows = Vec::new();
    let sgm_times: Vec<f64> = results
        .iter()
        .map(|(_, t)| t.unwrap_or(maxtime))
        .collect();
    let solved = results.iter().filter(|(_, t)| t.is_some()).count();
    sgm_rows.push(SgmRow {
        class: class_name.clone(),
        solver: "nal".into(),
        sgm: sgm(&sgm_times, sh),
        solved_fraction: solved as f64 / results.len() as f64,
    });
    let mut profile_matrix: Vec<Vec<f64>> = vec![results
        .iter()
        .map(|(_, t)| t.unwrap_or(f64::INFINITY))
        .collect()];

    for path in &args.times_from {
        let (solver, rows) = read_external_times(path)?;
        let lookup: std::collections::HashMap<_, _> = rows.into_iter().collect();
        let times: Vec<f64> = results
            .iter()
            .map(|(stem, _)| lookup.get(stem).copied().unwrap_or(f64::INFINITY))
            .collect();
        let solved = times.iter().filter(|t| t.is_finite()).count();
        let sgm_encoded: Vec<f64> = times
            .iter()
            .map(|t| if t.is_finite() { *t } else { maxtime })
            .collect();
        sgm_rows.push(SgmRow {
            class: class_name.clone(),
            solver: solver.clone(),
            sgm: sgm(&sgm_encoded, sh),
            solved_fraction: solved as f64 / times.len() as f64,
        });
        profile_matrix.push(times);
        solver_names.push(solver);
    }

    let profile = perf_profile(&profile_matrix);
    let sgm_path = format!("{}sgm.csv", args.out_prefix);
    let profile_path = format!("{}profile.csv", args.out_prefix);
    std::fs::write(&sgm_path, write_sgm_csv(&sgm_rows))
        .map_err(|e| format!("cannot write {sgm_path}: {e}"))?;
    std::fs::write(&profile_path, write_profile_csv(&solver_names, &profile))
        .map_err(|e| format!("cannot write {profile_path}: {e}"))?;

    eprintln!(
        "status=Benched problems={} solved={} sgm={:.4} -> {sgm_path}, {profile_path}",
        results.len(),
        solved,
        sgm_rows[0].sgm
    );
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Condscan(args) => cmd_condscan(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
    }
}
