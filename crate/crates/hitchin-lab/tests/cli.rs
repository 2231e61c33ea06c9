//! Exit codes and outputs of the command-line tool.

use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("hitchin-lab-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn run(args: &[&str], cache: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hitchin-lab"))
        .args(args)
        .env("HITCHIN_LAB_CACHE", cache)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn usage_errors_exit_2() {
    let c = scratch("usage");
    for args in [
        &["bogus"][..],
        &["--t-min", "0", "radial-fit"],
        &["--t-min", "8", "--t-max", "8", "table"],
        &["--t-count", "3", "horizontal-fit"],
        &["--tol=-1", "psi-table"],
        &["--format", "xml", "cone-check"],
        &["--n-r", "1", "residual"],
        &[],
    ] {
        let o = run(args, &c);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    std::fs::remove_dir_all(&c).unwrap();
}

#[test]
fn help_and_version_exit_0() {
    let c = scratch("help");
    for args in [["--help"], ["--version"]] {
        assert_eq!(code(&run(&args, &c)), 0);
    }
    std::fs::remove_dir_all(&c).unwrap();
}

#[test]
fn quick_checks_pass() {
    let c = scratch("quick");
    for sub in ["cone-check", "crosscheck", "ft-props", "psi-table"] {
        let o = run(&[sub], &c);
        let out = String::from_utf8_lossy(&o.stdout);
        assert_eq!(code(&o), 0, "{sub}: {out}");
        assert!(out.contains("[PASS]"), "{sub}: {out}");
    }
    std::fs::remove_dir_all(&c).unwrap();
}

#[test]
fn outputs_are_written_and_deterministic() {
    let c = scratch("out");
    let dir = scratch("out-files");
    let csv = dir.join("rr.csv");
    let json = dir.join("rr.json");
    let args = ["--t-count", "4", "--t-max", "16", "--n-r", "48", "--n-theta", "8"];
    let mut a: Vec<&str> = args.to_vec();
    a.extend(["--out", csv.to_str().unwrap(), "radial-fit"]);
    assert_eq!(code(&run(&a, &c)), 0);
    let first = std::fs::read_to_string(&csv).unwrap();
    assert!(first.starts_with("direction,"));
    assert_eq!(code(&run(&a, &c)), 0);
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), first);

    let mut b: Vec<&str> = args.to_vec();
    b.extend(["--format", "json", "--out", json.to_str().unwrap(), "radial-fit"]);
    assert_eq!(code(&run(&b, &c)), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["rows"][0]["direction"], "rr");
    std::fs::remove_dir_all(&c).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
}

/// `all` exits 1 exactly when some criterion fails, with one line each.
#[test]
fn all_exit_code_tracks_failures() {
    let c = scratch("all");
    let o = run(&["all"], &c);
    let out = String::from_utf8_lossy(&o.stdout);
    let lines: Vec<&str> = out.lines().filter(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]")).collect();
    assert_eq!(lines.len(), 12, "{out}");
    let failed = lines.iter().any(|l| l.starts_with("[FAIL]"));
    assert_eq!(code(&o), if failed { 1 } else { 0 });
    std::fs::remove_dir_all(&c).unwrap();
}

#[test]
fn residual_dumps_fields_and_operator() {
    let c = scratch("dump");
    let dir = scratch("dump-files");
    let o = run(
        &["--n-r", "16", "--n-theta", "8", "--t-count", "2", "--t-max", "16", "residual", "--dump", dir.to_str().unwrap()],
        &c,
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let higgs = std::fs::read_to_string(dir.join("higgs.csv")).unwrap();
    assert!(higgs.starts_with("component,r,theta,re_m11"));
    assert_eq!(higgs.lines().count(), 1 + 16 * 8);
    let ops = std::fs::read_to_string(dir.join("operator.txt")).unwrap();
    for line in ops.lines() {
        let f: Vec<&str> = line.split(' ').collect();
        assert_eq!(f.len(), 3);
        f[2].parse::<f64>().unwrap();
    }
    std::fs::remove_dir_all(&c).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
}
