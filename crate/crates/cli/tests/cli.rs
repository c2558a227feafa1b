use std::process::Command;

use fmb_cli::{run_with, EXIT_BUDGET, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fmb").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn dims_of_h2_over_gf3() {
    let (code, out, _) = run(&["dims", "H_2", "--p", "3", "--field", "p=3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("dim A^2/A^3 = 7"), "{out}");
    assert!(out.contains("dim A^3/A^4 = 10"), "{out}");
    assert!(out.contains("jennings crosscheck: pass"));
}

#[test]
fn construct_then_verify_in_a_fresh_process() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert_d8.fmb");
    let p = path.to_str().unwrap();
    let (code, _, err) = run(&["construct", "D_8", "--out", p]);
    assert_eq!(code, EXIT_OK, "{err}");
    let status = Command::new(env!("CARGO_BIN_EXE_fmb"))
        .args(["verify", p])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&status.stdout).contains("verdict: basis"));
}

#[test]
fn truncated_certificate_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("d8.fmb");
    run(&["construct", "D_8", "--out", good.to_str().unwrap()]);
    let text = std::fs::read_to_string(&good).unwrap();
    let bad = dir.path().join("garbage.fmb");
    std::fs::write(&bad, text.lines().take(11).collect::<Vec<_>>().join("\n")).unwrap();
    let (code, _, err) = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("klein.fmb");
    run(&["construct", "C_2 x C_2", "--out", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    // replace the last basis element by the identity
    let mut lines: Vec<&str> = text.lines().collect();
    let last = lines.len() - 2;
    lines[last] = "1 0 0 0";
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let (code, out, _) = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(out.contains("not a basis"));
}

#[test]
fn search_exit_codes() {
    let (code, out, _) = run(&["search", "Q_8"]);
    assert_eq!(code, EXIT_NEGATIVE, "{out}");
    let (code, _, _) = run(&["search", "Q_8", "--field", "p=2,k=2", "--budget", "1"]);
    assert_eq!(code, EXIT_BUDGET);
    let (code, out, _) = run(&["search", "C_4", "--exhaustive"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("FMB-CERT v1"));
}

#[test]
fn obstruct_exit_codes_and_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g27.txt");
    let (code, out, _) = run(&["obstruct", "G_27", "--trunc", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    let report = std::fs::read_to_string(&path).unwrap();
    assert!(report.ends_with("verdict non-existence certified\n"));
    let (code, _, _) = run(&["obstruct", "D_8", "--trunc", "3"]);
    assert_eq!(code, EXIT_NEGATIVE);
    let (code, _, _) = run(&["obstruct", "G_27", "--trunc", "4", "--budget", "1"]);
    assert_eq!(code, EXIT_BUDGET);
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fmb"))
        .args(["search", "Q_8", "--field", "p=2,k=2"])
        .env("FMB_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_BUDGET));
}

#[test]
fn group_file_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.txt");
    std::fs::write(&path, "gen a order 2 power b\ngen b order 2 power 1\n").unwrap();
    let (code, out, _) = run(&["dims", "--group-file", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("order 4"));
    assert_eq!(run(&["dims", "D_8", "--field", "p=3"]).0, EXIT_USAGE);
    assert_eq!(run(&["dims", "NoSuchGroup"]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["verify", "/nonexistent/file.fmb"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn construct_failures() {
    let (code, _, err) = run(&["construct", "G_49"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(err.contains("108"));
    let (code, _, _) = run(&["construct", "Q_8"]);
    assert_eq!(code, EXIT_NEGATIVE);
}

#[test]
fn jobs_flag_and_catalog() {
    let (code, out, _) = run(&["--jobs", "1", "catalog"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("G_49"));
    let (code, out, _) = run(&["catalog", "D8YC4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("# order 16"));
}
