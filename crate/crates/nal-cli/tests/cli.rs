//! End-to-end CLI tests driving the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn nal() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nal"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nal-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_tiny_lp(dir: &Path) -> PathBuf {
    let path = dir.join("tiny.nalp");
    std::fs::write(
        &path,
        "NALP 1\nCONES 1\nNN 2\nDIMS 1 2\nA 2\n0 0 1\n0 1 1\nB 1\n1\nC 2\n1 0\nEND\n",
    )
    .unwrap();
    path
}

fn json_field(body: &str, key: &str) -> f64 {
    let marker = format!("\"{key}\":");
    let rest = &body[body.find(&marker).unwrap() + marker.len()..];
    let end = rest.find([',', '\n', '}']).unwrap();
    rest[..end].trim().parse().unwrap()
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

#[test]
fn solve_tiny_lp_reports_optimal_json() {
    let dir = tmp_dir("solve");
    let problem = write_tiny_lp(&dir);
    let json = dir.join("out.json");
    let log = dir.join("iters.csv");
    let out = run(nal()
        .arg("solve")
        .arg("--problem")
        .arg(&problem)
        .arg("--json")
        .arg(&json)
        .arg("--log")
        .arg(&log));
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("status=Optimal"), "{stderr}");

    let body = std::fs::read_to_string(&json).unwrap();
    assert!(json_field(&body, "schema") == 1.0);
    assert!(json_field(&body, "objective_primal").abs() < 1e-5);
    assert!(json_field(&body, "pinfeas") <= 1e-6);

    // --log rows equal the reported newton count
    let newton = json_field(&body, "newton_iters") as usize;
    let rows = std::fs::read_to_string(&log).unwrap().lines().count() - 1;
    assert_eq!(rows, newton);
}

#[test]
fn json_output_is_deterministic_apart_from_seconds() {
    let dir = tmp_dir("determinism");
    let problem = write_tiny_lp(&dir);
    let mut bodies = Vec::new();
    for tag in ["a", "b"] {
        let json = dir.join(format!("{tag}.json"));
        let out = run(nal().arg("solve").arg("--problem").arg(&problem).arg("--json").arg(&json));
        assert_eq!(out.status.code(), Some(0));
        let body = std::fs::read_to_string(&json).unwrap();
        // strip the wall-clock line
        let stripped: String = body
            .lines()
            .filter(|l| !l.contains("\"seconds\""))
            .collect::<Vec<_>>()
            .join("\n");
        bodies.push(stripped);
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn gen_then_solve_matches_midpoint_oracle() {
    let dir = tmp_dir("pipeline");
    let file = dir.join("meb.nalp");
    let out = run(nal()
        .args(["gen", "--family", "meb", "--params", "n=2,d=1", "--seed", "0", "--out"])
        .arg(&file));
    assert_eq!(out.status.code(), Some(0));

    // the generator's documented stream: two uniform points in [-1,1]
    let mut rng = nal_core::probio::rng::Rng::new(0);
    let p1 = rng.uniform(-1.0, 1.0);
    let p2 = rng.uniform(-1.0, 1.0);
    let radius = (p1 - p2).abs() / 2.0;

    let json = dir.join("meb.json");
    let out = run(nal().arg("solve").arg("--problem").arg(&file).arg("--json").arg(&json));
    assert_eq!(out.status.code(), Some(0));
    let body = std::fs::read_to_string(&json).unwrap();
    assert!(
        (json_field(&body, "objective_dual") - radius).abs() < 1e-5,
        "radius {} vs oracle {radius}",
        json_field(&body, "objective_dual")
    );
    assert!((json_field(&body, "objective_primal") - radius).abs() < 1e-3);
}

#[test]
fn malformed_file_exits_with_parse_code() {
    let dir = tmp_dir("malformed");
    let path = dir.join("broken.nalp");
    std::fs::write(&path, "NALP 1\nCONES 1\nSOC 1\n").unwrap();
    let out = run(nal().arg("solve").arg("--problem").arg(&path));
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_flag_is_an_error() {
    let dir = tmp_dir("badflag");
    let problem = write_tiny_lp(&dir);
    let out = run(nal().arg("solve").arg("--problem").arg(&problem).arg("--frobnicate"));
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn max_outer_exhaustion_exits_with_code_two() {
    let dir = tmp_dir("maxouter");
    let problem = write_tiny_lp(&dir);
    let out = run(nal()
        .arg("solve")
        .arg("--problem")
        .arg(&problem)
        .args(["--max-outer", "2"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn condscan_writes_expected_header() {
    let dir = tmp_dir("condscan");
    let file = dir.join("lp.nalp");
    let out = run(nal()
        .args(["gen", "--family", "lp", "--params", "m=6,n=18", "--seed", "3", "--out"])
        .arg(&file));
    assert_eq!(out.status.code(), Some(0));
    let csv = dir.join("condscan.csv");
    let out = run(nal()
        .arg("condscan")
        .arg("--problem")
        .arg(&file)
        .arg("--out")
        .arg(&csv)
        .arg("--compare-ipm"));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let body = std::fs::read_to_string(&csv).unwrap();
    assert!(body.starts_with("problem,k,mu,cond_nal,cond_ipm\n"));
    assert!(body.lines().count() > 3);
}

#[test]
fn bench_emits_sgm_and_profile() {
    let dir = tmp_dir("bench");
    for (name, m, n, seed) in [("a", 4, 12, 1u64), ("b", 5, 15, 2)] {
        let file = dir.join(format!("{name}.nalp"));
        let out = run(nal()
            .args([
                "gen",
                "--family",
                "lp",
                "--params",
                &format!("m={m},n={n}"),
                "--seed",
                &seed.to_string(),
                "--out",
            ])
            .arg(&file));
        assert_eq!(out.status.code(), Some(0));
    }
    // external timings for a fake comparison solver
    let times = dir.join("other.csv");
    std::fs::write(&times, "solver,problem,seconds\nother,a,0.5\nother,b,inf\n").unwrap();

    let prefix = format!("{}/", dir.display());
    let out = run(nal()
        .arg("bench")
        .arg("--dir")
        .arg(&dir)
        .args(["--out-prefix", &prefix, "--class", "lp", "--jobs", "2", "--times-from"])
        .arg(&times));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let sgm_body = std::fs::read_to_string(dir.join("sgm.csv")).unwrap();
    assert!(sgm_body.starts_with("class,solver,sgm,solved_fraction\n"));
    assert!(sgm_body.contains("lp,nal,"));
    assert!(sgm_body.contains("lp,other,"));
    // the fake solver failed one of two problems
    let other_row = sgm_body.lines().find(|l| l.starts_with("lp,other")).unwrap();
    assert!(other_row.ends_with("5.0000000000000000e-1"), "{other_row}");

    let profile_body = std::fs::read_to_string(dir.join("profile.csv")).unwrap();
    assert!(profile_body.starts_with("solver,tau,rho\n"));
    assert!(profile_body.lines().any(|l| l.starts_with("nal,")));
    assert!(profile_body.lines().any(|l| l.starts_with("other,")));
}
