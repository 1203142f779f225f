use std::path::Path;
use std::process::{Command, Output};

use rdmt::io::read_matrices_jsonl;
use rdmt::verify::default_suite;
use tempfile::tempdir;

fn rdmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdmt"))
        .args(args)
        .env_remove("RDMT_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const MATRIC_T: [&str; 10] = ["--dist", "matric-t", "--beta", "2", "--m", "2", "--n", "3", "--nu", "5"];

#[test]
fn sample_writes_count_matrices_reproducibly() {
    let dir = tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for out in [&a, &b] {
        let mut args = vec!["sample"];
        args.extend(MATRIC_T);
        args.extend(["--count", "100", "--seed", "7", "--out", path_str(out)]);
        let o = rdmt(&args);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let xs = read_matrices_jsonl(&text).unwrap();
    assert_eq!(xs.len(), 100);
    assert!(xs.iter().all(|x| (x.tag().beta(), x.rows(), x.cols()) == (2, 2, 3)));
}

#[test]
fn run_record_comes_first() {
    let mut args = vec!["sample"];
    args.extend(MATRIC_T);
    args.extend(["--count", "2", "--seed", "7", "--method", "inverse-root"]);
    let o = rdmt(&args);
    assert_eq!(code(&o), 0);
    let err = stderr(&o);
    let record: serde_json::Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
    assert_eq!(record["command"], "sample");
    assert_eq!(record["seed"], 7);
    assert_eq!(record["method"], "inverse-root");
    assert_eq!(record["params"]["family"], "matric-t");
    assert_eq!(record["params"]["nu"], 5.0);
}

#[test]
fn seed_falls_back_to_the_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_rdmt"));
        c.args(["sample", "--dist", "gamma", "--beta", "1", "--nu", "3", "--count", "4"]);
        c.env_remove("RDMT_SEED");
        if let Some(s) = env {
            c.env("RDMT_SEED", s);
        }
        c.output().unwrap()
    };
    let with_env = run(Some("12"));
    assert_eq!(code(&with_env), 0, "{}", stderr(&with_env));
    let explicit = rdmt(&["sample", "--dist", "gamma", "--beta", "1", "--nu", "3", "--count", "4", "--seed", "12"]);
    assert_eq!(with_env.stdout, explicit.stdout);
    assert_eq!(code(&run(None)), 2);
}

#[test]
fn octonion_matrices_are_rejected() {
    let o = rdmt(&["sample", "--dist", "matric-t", "--beta", "8", "--m", "2", "--n", "3", "--nu", "50", "--count", "1", "--seed", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("octonion"), "{}", stderr(&o));
}

#[test]
fn cauchy_density_at_zero() {
    let dir = tempdir().unwrap();
    let pts = dir.path().join("p.jsonl");
    std::fs::write(&pts, "{\"beta\":1,\"rows\":1,\"cols\":1,\"data\":[[[0.0]]]}\n").unwrap();
    let o = rdmt(&["density", "--dist", "matric-t", "--beta", "1", "--m", "1", "--n", "1", "--nu", "1", "--points", path_str(&pts)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: f64 = String::from_utf8(o.stdout).unwrap().trim().parse().unwrap();
    assert!((v + std::f64::consts::PI.ln()).abs() < 1e-12);
    assert!((v + 1.1447).abs() < 1e-4);
}

#[test]
fn primal_and_dual_densities_agree() {
    let dir = tempdir().unwrap();
    let pts = dir.path().join("p.jsonl");
    let mut args = vec!["sample"];
    args.extend(MATRIC_T);
    args.extend(["--count", "20", "--seed", "3", "--out", path_str(&pts)]);
    assert_eq!(code(&rdmt(&args)), 0);
    let eval = |form: &str| {
        let mut args = vec!["density"];
        args.extend(MATRIC_T);
        args.extend(["--points", path_str(&pts), "--form", form]);
        let o = rdmt(&args);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        String::from_utf8(o.stdout)
            .unwrap()
            .lines()
            .map(|l| l.parse::<f64>().unwrap())
            .collect::<Vec<_>>()
    };
    let (p, d) = (eval("primal"), eval("dual"));
    assert_eq!(p.len(), 20);
    for (a, b) in p.iter().zip(&d) {
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempdir().unwrap();
    let pts = dir.path().join("bad.jsonl");
    std::fs::write(&pts, "{\"beta\":1,\n").unwrap();
    let o = rdmt(&["density", "--dist", "matric-t", "--beta", "1", "--m", "1", "--n", "1", "--nu", "1", "--points", path_str(&pts)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));

    let params = dir.path().join("params.json");
    std::fs::write(&params, "{\"family\":\"matric-t\",\"beta\":1,").unwrap();
    let o = rdmt(&["sample", "--params", path_str(&params), "--count", "1", "--seed", "1"]);
    assert_eq!(code(&o), 2);

    let o = rdmt(&["density", "--dist", "matric-t", "--beta", "1", "--m", "1", "--n", "1", "--nu", "1", "--points", "/nonexistent/p.jsonl"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn parameter_files_match_flags() {
    let dir = tempdir().unwrap();
    let params = dir.path().join("params.json");
    std::fs::write(&params, r#"{"family":"matric-t","beta":2,"m":2,"n":3,"nu":5}"#).unwrap();
    let from_file = rdmt(&["sample", "--params", path_str(&params), "--count", "5", "--seed", "9"]);
    let mut args = vec!["sample"];
    args.extend(MATRIC_T);
    args.extend(["--count", "5", "--seed", "9"]);
    let from_flags = rdmt(&args);
    assert_eq!(code(&from_file), 0, "{}", stderr(&from_file));
    assert_eq!(from_file.stdout, from_flags.stdout);
}

#[test]
fn usage_errors_exit_2() {
    let o = rdmt(&["frobnicate"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("Usage"), "{}", stderr(&o));
    assert_eq!(code(&rdmt(&[])), 2);
    assert_eq!(code(&rdmt(&["sample", "--dist", "matric-t", "--count", "1", "--seed", "1"])), 2);
    assert_eq!(code(&rdmt(&["sample", "--dist", "gamma", "--beta", "1", "--nu", "2", "--count", "1", "--seed", "1", "--method", "gram"])), 2);
    assert_eq!(code(&rdmt(&["--help"])), 0);
}

#[test]
fn spectrum_rows_match_count() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let grid = dir.path().join("g.csv");
    let o = rdmt(&[
        "spectrum", "--dist", "matric-t", "--beta", "1", "--m", "2", "--n", "3", "--nu", "4", "--count", "250", "--seed", "5",
        "--out", path_str(&out), "--grid", path_str(&grid), "--grid-points", "12",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("v1,v2"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 250);
    assert!(rows.iter().all(|r| r.len() == 2 && r[0] > r[1] && r[1] > 0.0));

    let grid = std::fs::read_to_string(&grid).unwrap();
    let mut lines = grid.lines();
    assert_eq!(lines.next(), Some("v1,v2,log_density"));
    assert_eq!(lines.filter(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap().is_finite()).count(), 66);
}

#[test]
fn spectrum_of_hermitian_draws_is_eigen_only() {
    let base = ["spectrum", "--dist", "wishart", "--beta", "2", "--m", "3", "--nu", "6", "--count", "7", "--seed", "1"];
    let o = rdmt(&base);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 8);
    let mut args = base.to_vec();
    args.extend(["--kind", "singular"]);
    assert_eq!(code(&rdmt(&args)), 2);
    let mut args = base.to_vec();
    args.extend(["--grid", "/tmp/unused.csv"]);
    assert_eq!(code(&rdmt(&args)), 2);
}

#[test]
fn verify_default_suite() {
    let dir = tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = rdmt(&["verify", "--suite", "default", "--seed", "11", "--report", path_str(&report)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["pass"], true);
    assert_eq!(r["seed"], 11);
    assert_eq!(r["checks"].as_array().unwrap().len(), default_suite().len());
}

#[test]
fn verify_reports_are_byte_identical() {
    let dir = tempdir().unwrap();
    let suite: Vec<_> = default_suite()
        .into_iter()
        .filter(|c| c.name().starts_with("c1-") || c.name().starts_with("c5-") || c.name().starts_with("c8-"))
        .collect();
    let suite_path = dir.path().join("suite.json");
    std::fs::write(&suite_path, serde_json::to_string(&suite).unwrap()).unwrap();
    let run = |name: &str, parallel: bool| {
        let report = dir.path().join(name);
        let mut args = vec!["verify", "--suite", path_str(&suite_path), "--seed", "4", "--report", path_str(&report)];
        if parallel {
            args.push("--parallel");
        }
        let o = rdmt(&args);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        std::fs::read(&report).unwrap()
    };
    let a = run("a.json", false);
    assert_eq!(a, run("b.json", false));
    assert_eq!(a, run("c.json", true));
}

#[test]
fn failing_suite_exits_1() {
    let dir = tempdir().unwrap();
    let suite_path = dir.path().join("suite.json");
    // The printed coefficient integrates far from one, so a tight mass check fails.
    std::fs::write(
        &suite_path,
        r#"[{"name":"printed","kind":"normalization",
             "target":{"type":"spectral_mass","density":"sv_matric_t","beta":1,"m":1,"n":1,"nu":1.0,"variant":"printed"},
             "budget":{"tolerance":1e-9},"threshold":1e-6}]"#,
    )
    .unwrap();
    let o = rdmt(&["verify", "--suite", path_str(&suite_path), "--seed", "1"]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["pass"], false);

    std::fs::write(&suite_path, r#"[{"name":"x","kind":"ks1"}]"#).unwrap();
    assert_eq!(code(&rdmt(&["verify", "--suite", path_str(&suite_path), "--seed", "1"])), 2);
}
