//! Command-level tests: the qr, chain and mindist subcommands on their
//! documented examples, including exit-code semantics.

use std::path::PathBuf;
use std::process::Command;

use cssprop::{quantum_qr, Field};

fn run_cssprop(args: &[&str]) -> (String, String, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_cssprop"))
        .args(args)
        .env_remove("CSSPROP_MAX_CODEWORDS")
        .env_remove("CSSPROP_MAX_SECONDS")
        .env_remove("CSSPROP_THREADS")
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code(),
    )
}

fn write_code(dir: &std::path::Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn golay24_text() -> String {
    let gf2 = Field::new(2, 1).unwrap();
    quantum_qr(23, &gf2, true).unwrap().c1().to_text()
}

fn eqr48_text() -> String {
    let gf2 = Field::new(2, 1).unwrap();
    quantum_qr(47, &gf2, true).unwrap().c1().to_text()
}

#[test]
fn qr_small_binary_and_ternary_codes() {
    let (stdout, stderr, code) = run_cssprop(&["qr", "--n", "23", "--q", "2", "--extended"]);
    assert_eq!(code, Some(0), "stderr: {stderr}");
    assert!(stdout.contains("[[24,0,8]]_2"));
    assert!(stdout.contains("verified"));

    let (stdout, _, code) = run_cssprop(&["qr", "--n", "7", "--q", "2", "--extended"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("[[8,0,4]]_2"));

    let (stdout, _, code) = run_cssprop(&["qr", "--n", "11", "--q", "3", "--extended"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("[[12,0,6]]_3"));
}

#[test]
fn qr_rejects_non_residue_pairs() {
    let (_, stderr, code) = run_cssprop(&["qr", "--n", "5", "--q", "2"]);
    assert_eq!(code, Some(1));
    assert!(
        stderr.contains("not a quadratic residue"),
        "stderr: {stderr}"
    );
}

#[test]
fn qr_emits_matrices_in_the_text_format() {
    let (stdout, _, code) =
        run_cssprop(&["qr", "--n", "7", "--q", "2", "--extended", "--matrices"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("# generator matrix: c1"));
    assert!(stdout.contains("2 8 4"));
}

#[test]
fn chain_from_seed_file_with_pair_rule_gives_steane() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_code(dir.path(), "golay24.gen", &golay24_text());
    let (stdout, stderr, code) = run_cssprop(&[
        "chain",
        "--seed-file",
        path.to_str().unwrap(),
        "--rule",
        "pair",
        "--steps",
        "1",
        "--verify",
    ]);
    assert_eq!(code, Some(0), "stderr: {stderr}");
    assert!(stdout.contains("[[24,0,8]]_2"), "{stdout}");
    let row = stdout
        .lines()
        .find(|l| l.starts_with("[[23,1,7]]_2"))
        .expect("pair-punctured row");
    assert!(row.contains("verified"));
    assert!(row.contains("d1=7"));
}

#[test]
fn chain_parameter_only_mode_truncates_gracefully() {
    let (stdout, _, code) = run_cssprop(&[
        "chain",
        "--seed-params",
        "[[6,0,2]]_2",
        "--steps",
        "5",
        "--rule",
        "reduce2",
    ]);
    // hypotheses fail after the first step; partial output, exit 0
    assert_eq!(code, Some(0));
    assert!(stdout.contains("[[4,0,1]]_2"));
    assert!(stdout.contains("chain truncated"));
}

#[test]
fn chain_seed_distance_is_recorded_as_ingested() {
    let (stdout, _, code) = run_cssprop(&[
        "chain",
        "--seed-qr",
        "47",
        "--q",
        "2",
        "--extended",
        "--seed-distance",
        "12",
        "--steps",
        "1",
    ]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("supplied as an external input"));
    let seed_row = stdout
        .lines()
        .find(|l| l.starts_with("[[48,0,12]]_2"))
        .unwrap();
    assert!(seed_row.contains("ingested"));
    assert!(stdout.contains("[[46,0,11]]_2"));
}

#[test]
fn mindist_verifies_known_codes() {
    let dir = tempfile::tempdir().unwrap();
    let golay = write_code(dir.path(), "golay24.gen", &golay24_text());
    let (stdout, _, code) = run_cssprop(&["mindist", "--file", golay.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("minimum weight 8 (verified)"), "{stdout}");

    let eqr = write_code(dir.path(), "eqr48.gen", &eqr48_text());
    let (stdout, _, code) =
        run_cssprop(&["mindist", "--file", eqr.to_str().unwrap(), "--engine", "bz"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("minimum weight 12 (verified)"), "{stdout}");
}

#[test]
fn mindist_budget_abort_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let eqr = write_code(dir.path(), "eqr48.gen", &eqr48_text());
    let (stdout, _, code) = run_cssprop(&[
        "mindist",
        "--file",
        eqr.to_str().unwrap(),
        "--max-codewords",
        "500",
    ]);
    assert_eq!(code, Some(2));
    assert!(stdout.contains("lower bound"), "{stdout}");
}

#[test]
fn mindist_relative_distance() {
    let dir = tempfile::tempdir().unwrap();
    let gf2 = Field::new(2, 1).unwrap();
    let steane = quantum_qr(7, &gf2, false).unwrap();
    let c1 = write_code(dir.path(), "hamming.gen", &steane.c1().to_text());
    let sub = write_code(dir.path(), "dual.gen", &steane.c2().dual().to_text());
    let (stdout, _, code) = run_cssprop(&[
        "mindist",
        "--file",
        c1.to_str().unwrap(),
        "--relative",
        sub.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("minimum weight 3 (verified)"), "{stdout}");
}

#[test]
fn mindist_rejects_malformed_files_and_non_subcodes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_code(dir.path(), "bad.gen", "2 3 1\nxyz\n");
    let (_, stderr, code) = run_cssprop(&["mindist", "--file", bad.to_str().unwrap()]);
    assert_eq!(code, Some(1));
    assert!(stderr.contains("parsing"), "stderr: {stderr}");

    let a = write_code(dir.path(), "a.gen", "2 4 1\n1100\n");
    let b = write_code(dir.path(), "b.gen", "2 4 1\n0011\n");
    let (_, stderr, code) = run_cssprop(&[
        "mindist",
        "--file",
        a.to_str().unwrap(),
        "--relative",
        b.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(1));
    assert!(stderr.contains("not a subcode"), "stderr: {stderr}");
}

#[test]
fn env_var_overrides_budget() {
    let dir = tempfile::tempdir().unwrap();
    let eqr = write_code(dir.path(), "eqr48.gen", &eqr48_text());
    let out = Command::new(env!("CARGO_BIN_EXE_cssprop"))
        .args(["mindist", "--file", eqr.to_str().unwrap()])
        .env("CSSPROP_MAX_CODEWORDS", "500")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}
