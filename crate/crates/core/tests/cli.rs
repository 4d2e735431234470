//! Integration tests driving the installed binary.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quadric33"))
}

#[test]
fn classify_json_deterministic() {
    let run = || {
        let out = bin()
            .args(["classify", "X*Y*(X*W^3 + Y*Z^3)", "--json"])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a, b, "reports must be byte-identical across runs");
    assert!(a.contains("\"strictly_semistable\""));
    assert!(a.contains("Delta_2"));
    assert!(!a.contains("timing_ms"));
}

#[test]
fn wrong_bidegree_is_exit_1() {
    let out = bin().args(["classify", "X^2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("WRONG_BIDEGREE"));
}

#[test]
fn usage_errors_are_exit_2() {
    let out = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certify_subcommand() {
    let out = bin()
        .args(["certify", "X^2*(Y*W^3 + X*Z^3)", "--rho", "4,1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("ValidUnstable"));
    // invalid certificate: exit 1
    let out = bin()
        .args(["certify", "X^3*Z^3 + Y^3*W^3", "--rho", "1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn divisor_subcommands() {
    for (args, needle) in [
        (vec!["divisor", "petri"], "17*lambda"),
        (vec!["divisor", "moving-slope"], "60/7"),
        (vec!["divisor", "lambda-delta"], "34"),
        (vec!["divisor", "chow"], "14"),
        (vec!["divisor", "discrepancy", "--alpha", "29/60"], "effective: true"),
        (vec!["divisor", "polarization", "--alpha", "8/17"], "zero"),
    ] {
        let out = bin().args(&args).output().unwrap();
        assert!(out.status.success(), "{:?} failed", args);
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert!(stdout.contains(needle), "{:?}: missing {:?} in {}", args, needle, stdout);
    }
}

#[test]
fn implicitize_from_json() {
    let dir = std::env::temp_dir().join("q33_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("diag.json");
    std::fs::write(&path, r#"{"phi1": [[0,1],[1]], "phi2": [[0,1],[1]]}"#).unwrap();
    let out = bin()
        .args(["implicitize", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    // the diagonal XW - YZ up to sign
    assert!(s.contains("X*W") && s.contains("Y*Z"), "got {}", s);
}

#[test]
fn matrix_input() {
    let dir = std::env::temp_dir().join("q33_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mat.json");
    // XY(XW^3 + YZ^3): c[2][0] = 1, c[1][3] = 1
    std::fs::write(
        &path,
        r#"[[0,0,0,0],[0,0,0,1],[1,0,0,0],[0,0,0,0]]"#,
    )
    .unwrap();
    let out = bin()
        .args(["classify", "--matrix", path.to_str().unwrap(), "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("strictly_semistable"));
}
