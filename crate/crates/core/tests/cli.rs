//! Exit-code and output contract of the `sigmadelta` binary:
//! 0 = pass, 1 = fail, 2 = usage or parse error.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigmadelta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

#[test]
fn integrability_pass_and_fail() {
    let out = run(&["check-integrability", &fixture("chebyshev.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS"));

    let out = run(&["check-integrability", &fixture("not_integrable.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("FAIL"));
}

#[test]
fn specialize_exit_codes() {
    let out = run(&["specialize", &fixture("chebyshev.json"), "--t", "0"]);
    assert_eq!(out.status.code(), Some(0));

    // h = 1 - t^2 vanishes at t = 1: a fail verdict, not a usage error
    let out = run(&["specialize", &fixture("chebyshev.json"), "--t", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("vanishes"));
}

#[test]
fn usage_errors_are_exit_two() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        run(&["check-integrability", "/no/such/file.json"])
            .status
            .code(),
        Some(2)
    );
    // --t and --x are mutually exclusive and one is required
    assert_eq!(
        run(&["specialize", &fixture("chebyshev.json")]).status.code(),
        Some(2)
    );
}

#[test]
fn json_format_round_trips() {
    let out = run(&[
        "--format",
        "json",
        "galois",
        "stab-sigma",
        "--c1",
        "1/2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn deterministic_output() {
    let a = run(&["galois", "product", "--c1", "2", "--c2", "1/3"]);
    let b = run(&["galois", "product", "--c1", "2", "--c2", "1/3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
