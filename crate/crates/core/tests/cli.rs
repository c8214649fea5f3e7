use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ensemble-rcs")).args(args).output().expect("binary runs")
}

fn body(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn header_echoes_resolved_config() {
    let out = run(&["entropy-sweep", "--n", "4", "--m", "2", "--cycles", "2", "--circuits", "2", "--seed", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), format!("# ensemble-rcs {}", env!("CARGO_PKG_VERSION")));
    assert_eq!(lines.next().unwrap(), "# command: entropy-sweep");
    let json: serde_json::Value = serde_json::from_str(lines.next().unwrap().trim_start_matches("# config: ")).unwrap();
    assert_eq!(json["n"], 4);
    assert_eq!(json["seed"], 3);
    assert!((json["xi"].as_f64().unwrap() - std::f64::consts::PI / 8f64.sqrt()).abs() < 1e-15);
}

#[test]
fn reruns_are_byte_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let common = ["fpi-fidelity", "--n", "5", "--m", "1", "--cycles", "4", "--paths", "300", "--seed", "11"];
    for (path, threads) in [(&a, "1"), (&b, "4")] {
        let mut args = common.to_vec();
        args.extend(["--threads", threads, "--out", path.to_str().unwrap()]);
        assert!(run(&args).status.success());
    }
    assert_eq!(body(&read(&a)), body(&read(&b)));
    assert!(!body(&read(&a)).is_empty());
}

#[test]
fn sample_is_seeded() {
    let args = ["sample", "--n", "3", "--m", "2", "--cycles", "3", "--shots", "50", "--seed", "9"];
    let first = run(&args).stdout;
    assert_eq!(first, run(&args).stdout);
    let other = run(&["sample", "--n", "3", "--m", "2", "--cycles", "3", "--shots", "50", "--seed", "10"]).stdout;
    assert_ne!(body(&String::from_utf8(first).unwrap()), body(&String::from_utf8(other).unwrap()));
}

#[test]
fn worst_case_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("poly.txt");
    std::fs::write(&spec, "# pair term\nbeta 1 2\n").unwrap();
    let out = run(&["worst-case", "--n", "1", "--m", "2", "--spec-file", spec.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row = body(&text).lines().nth(1).unwrap().to_string();
    let fields: Vec<f64> = row.split(',').skip(1).map(|v| v.parse().unwrap()).collect();
    assert!((fields[0] - 0.25).abs() < 1e-12 && (fields[1] - 0.25).abs() < 1e-15 && fields[2] < 1e-9);

    std::fs::write(&spec, "beta 1 2\nalpha 1 2\n").unwrap();
    let out = run(&["worst-case", "--n", "1", "--m", "2", "--spec-file", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(":2:") && err.contains("alpha 1 2"), "{err}");
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "n = 6\nm = 1\ncycles = 1\nshots = 3\nseed = 4\n").unwrap();
    let out = run(&["sample", "--config", cfg.to_str().unwrap(), "--shots", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"n\":6") && text.contains("\"shots\":2"));
    assert_eq!(body(&text).lines().count(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["pt-dist", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["pt-dist", "--n", "1000", "--m", "4"]).status.code(), Some(3));
    assert_eq!(run(&["pt-dist", "--n", "200", "--m", "2", "--tau", "1"]).status.code(), Some(3));
    assert_eq!(run(&["synth-check", "--steps", "10,10"]).status.code(), Some(4));
    assert_eq!(run(&["sample", "--n", "2", "--out", "/nonexistent-dir/x.csv"]).status.code(), Some(5));
    assert_eq!(run(&["worst-case", "--n", "1", "--m", "1"]).status.code(), Some(2));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}
