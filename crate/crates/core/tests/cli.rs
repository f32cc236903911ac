//! The `burkholder` binary: exit codes, report files and multiplier I/O.

use burkholder::multiplier::io::{read_csv, read_field, write_csv, write_field};
use burkholder::multiplier::{apply_symbol, symbol_beurling, ComplexField, FrequencyGrid};
use num_complex::Complex64;
use std::process::{Command, Output};

fn burkholder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burkholder")).args(args).output().expect("binary runs")
}

fn test_field(grid: FrequencyGrid) -> ComplexField {
    let mut f = ComplexField::from_fn(grid, |x| {
        let r2 = (x[0] - 0.4).powi(2) + (x[1] - 0.55).powi(2);
        Complex64::new((-r2 / 0.01).exp(), 0.3 * (-r2 / 0.02).exp() * x[0])
    });
    f.subtract_mean();
    f
}

#[test]
fn constants_prints_the_table_and_exits_zero() {
    let out = burkholder(&["constants", "--p", "2,4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Davis constant D_1"));
    assert!(text.contains("open"), "D_p is reported open above p = 2");
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(burkholder(&["constants", "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(burkholder(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(burkholder(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(burkholder(&["multiplier", "--in", "/no/such/file.bfld", "--out", "/tmp/x.bfld"]).status.code(), Some(2));
}

#[test]
fn verify_writes_identical_reports_on_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = burkholder(&[
            "verify",
            "--suite",
            "biconcavity,haar",
            "--p",
            "3",
            "--samples",
            "5000",
            "--seed",
            "7",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(path).unwrap()
    };
    let a = run("a.json");
    let b = run("b.json");
    assert_eq!(a, b);
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    let records = report["records"].as_array().unwrap();
    assert!(!records.is_empty());
    for key in ["suite", "paper_ref", "value", "bound", "pass"] {
        assert!(records[0].get(key).is_some(), "record field {key}");
    }
    assert!(dir.path().join("a.meta.json").exists());
}

#[test]
fn multiplier_applies_beurling_to_a_container() {
    let dir = tempfile::tempdir().unwrap();
    let grid = FrequencyGrid::square(32, 1.0).unwrap();
    let f = test_field(grid);
    let input = dir.path().join("f.bfld");
    let output = dir.path().join("g.bfld");
    write_field(&input, &f).unwrap();
    let out = burkholder(&[
        "multiplier",
        "--in",
        input.to_str().unwrap(),
        "--out",
        output.to_str().unwrap(),
        "--symbol",
        "beurling",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let g = read_field(&output, 1.0).unwrap();
    let expected = apply_symbol(&f, &symbol_beurling(grid).unwrap()).unwrap();
    assert_eq!(g.data, expected.data);
}

#[test]
fn multiplier_reads_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let grid = FrequencyGrid::square(16, 1.0).unwrap();
    let f = test_field(grid);
    let input = dir.path().join("f.csv");
    let output = dir.path().join("g.csv");
    write_csv(std::fs::File::create(&input).unwrap(), &f).unwrap();
    let out = burkholder(&[
        "multiplier",
        "--in",
        input.to_str().unwrap(),
        "--out",
        output.to_str().unwrap(),
        "--symbol",
        "identity",
        "--grid",
        "16",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let g = read_csv(std::fs::File::open(&output).unwrap(), grid).unwrap();
    assert!(g.relative_l2_error(&f).unwrap() < 1e-14);
    // CSV without a grid size is a configuration error
    let out = burkholder(&["multiplier", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"command": "constants", "p": [0.5]}"#).unwrap();
    assert_eq!(burkholder(&["constants", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(burkholder(&["constants", "--config", cfg.to_str().unwrap(), "--p", "3"]).status.code(), Some(0));
}
