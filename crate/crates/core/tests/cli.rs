//! Exit codes and outputs of the `varexp` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn varexp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_varexp")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn demo_report_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = root().join("configs/demo.json");
    let o = varexp(&["--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap(), "report"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let got = std::fs::read_to_string(dir.path().join("demo.json")).unwrap();
    let golden = std::fs::read_to_string(root().join("configs/demo.golden.json")).unwrap();
    assert_eq!(got, golden);
}

#[test]
fn defaults_print_to_stdout() {
    let o = varexp(&["--resolutions", "32,64", "norm"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_array() || v.is_object());

    let o = varexp(&["--resolutions", "32,64", "--format", "csv", "operator", "run"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("section,experiment,n,name,value\n"));

    for args in [&["--resolutions", "64", "maximal"][..], &["--resolutions", "64", "dims"], &["--resolutions", "64", "weights", "check"]] {
        let o = varexp(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn fourier_sum_of_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.csv");
    let body: String = (0..64).map(|i| format!("{}\n", (i as f64 * std::f64::consts::TAU / 64.0).cos())).collect();
    std::fs::write(&input, body).unwrap();
    let o = varexp(&["fourier", "sum", "--method", "cesaro", "--order", "4", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let first: f64 = text.lines().next().unwrap().parse().unwrap();
    assert_eq!(text.lines().count(), 64);
    assert!((first - 0.8).abs() < 1e-12, "{first}");
}

#[test]
fn falsified_trace_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "halved.json",
        r#"{"name":"halved","space":{"kind":"interval","a":0.0,"b":1.0},
            "exponent":{"kind":"constant","value":2.0},"operator":{"id":"identity"},"resolutions":[64],
            "trace":{"operator":{"id":"identity"},"p0":1.5,"q0":1.5,"c0_scale":0.5}}"#,
    );
    let o = varexp(&["--config", &cfg, "extrapolate", "trace"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&varexp(&["--config", "/nonexistent/cfg.json", "norm"])), 2);
    assert_eq!(code(&varexp(&["--resolutions", "256,128", "norm"])), 2);
    let bad = write_config(dir.path(), "bad.json", r#"{"name":"x","space":{"kind":"torus"}}"#);
    assert_eq!(code(&varexp(&["--config", &bad, "norm"])), 2);
    let pot = write_config(
        dir.path(),
        "pot.json",
        r#"{"name":"pot","space":{"kind":"circle"},"exponent":{"kind":"constant","value":2.0},
            "operator":{"id":"metric_potential","gamma":0.6},"resolutions":[32]}"#,
    );
    assert_eq!(code(&varexp(&["--config", &pot, "operator", "run"])), 2);
}
