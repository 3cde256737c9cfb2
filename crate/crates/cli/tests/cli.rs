//! Black-box tests of the esms binary: output determinism, exit codes,
//! config-file handling.

use std::path::PathBuf;
use std::process::{Command, Output};

fn esms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esms"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("esms-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

#[test]
fn value_output_is_deterministic() {
    let args = ["kloosterman", "--n", "1", "--m", "2", "--c", "22"];
    let first = esms(&args);
    let second = esms(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "two runs must agree byte-for-byte");
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.contains("\"command\": \"kloosterman\""));
    assert!(text.contains("\"value\""));
}

#[test]
fn verify_output_is_deterministic_up_to_timing() {
    let args = ["verify", "--suite", "coefficients"];
    let strip = |out: Vec<u8>| -> String {
        String::from_utf8(out)
            .unwrap()
            .lines()
            .filter(|l| !l.contains("\"runtime_ms\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = esms(&args);
    let second = esms(&args);
    assert_eq!(first.status.code(), Some(0));
    let a = strip(first.stdout);
    let b = strip(second.stdout);
    assert_eq!(a, b, "verify JSON must be identical after removing timings");
    assert!(a.contains("\"passed\": true"));
    assert!(a.contains("\"suite\": \"coefficients\""));
}

#[test]
fn usage_errors_exit_with_code_two() {
    // Unknown flag.
    assert_eq!(esms(&["coeffs", "--frequency", "3"]).status.code(), Some(2));
    // Unknown suite name.
    let out = esms(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
    // Odd character index is rejected at configuration time.
    let out = esms(&["--char-index", "3", "coeffs", "--upto", "5"]);
    assert_eq!(out.status.code(), Some(2));
    // Missing config file.
    assert_eq!(
        esms(&["--config", "/nonexistent/esms.conf", "coeffs"]).status.code(),
        Some(2)
    );
}

#[test]
fn computation_errors_exit_with_code_one() {
    // c not a multiple of the level.
    let out = esms(&["kloosterman", "--n", "1", "--m", "0", "--c", "12"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn config_file_is_read_and_flags_win() {
    let path = temp_file("conf", "char_index = 4\nepsilon = 1e-10\n# comment\n");
    let path_s = path.to_str().unwrap();

    // Config alone: the character index from the file shows in the output.
    let out = esms(&["--config", path_s, "kloosterman", "--n", "1", "--m", "0", "--c", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("e(4/10)"), "config char_index=4 should apply: {text}");

    // Flag beats config.
    let out = esms(&[
        "--config", path_s, "--char-index", "8", "kloosterman", "--n", "1", "--m", "0", "--c", "11",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("e(8/10)"), "flag should override config: {text}");

    std::fs::remove_file(path).ok();
}

#[test]
fn coeffs_writes_files_and_both_formats() {
    let out_path = std::env::temp_dir().join(format!("esms-coeffs-{}.csv", std::process::id()));
    let out = esms(&["coeffs", "--upto", "12", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("n,a_n\n1,1\n2,-2\n3,-1\n4,2\n5,1\n"));
    assert_eq!(text.lines().count(), 13);
    std::fs::remove_file(out_path).ok();

    let out = esms(&["coeffs", "--upto", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["level"], 11);
    assert_eq!(doc["coefficients"][1][1], -2);
}

#[test]
fn epsilon_below_floor_warns_and_clamps() {
    let out = esms(&["--epsilon", "1e-30", "lambda-twist", "--t", "1.5", "--c", "11", "--d", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("clamped"));
}
