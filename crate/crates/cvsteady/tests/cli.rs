use std::fs;
use std::process::{Command, Output};

fn cvsteady(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvsteady"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn point_prints_diagnostics() {
    let out = cvsteady(&["point", "--param", "G=0.5", "--param", "g=0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let e_n = v["E_N"].as_f64().unwrap();
    assert!((e_n - 0.18).abs() <= 0.02);
    assert_eq!(v["stable"], true);
}

#[test]
fn point_unstable_is_not_an_error() {
    let out = cvsteady(&["point", "--param", "G=0.5", "--param", "g=0.5", "--param", "delta=0.2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["stable"], false);
    assert!(v["E_N"].is_null());
}

#[test]
fn exit_codes() {
    assert_eq!(cvsteady(&[]).status.code(), Some(1));
    assert_eq!(cvsteady(&["point", "--param", "chi=1"]).status.code(), Some(1));
    assert_eq!(cvsteady(&["point", "--param", "kappa=-1"]).status.code(), Some(1));
    assert_eq!(cvsteady(&["--help"]).status.code(), Some(0));
    let numerical = cvsteady(&["point", "--param", "g=0.5", "--param", "n_m=1e308"]);
    assert_eq!(numerical.status.code(), Some(2));
}

#[test]
fn unknown_preset_lists_names() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.csv");
    let out = cvsteady(&["preset", "fig7", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("fig2a") && err.contains("fig5"));
    assert!(!out_path.exists());
}

#[test]
fn sweep_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("t.json");
    fs::write(
        &cfg,
        r#"{ "fixed": { "G": 0.6, "g": 0.8 },
             "axis1": { "name": "T", "min": 0.001, "max": 0.3, "count": 30, "scale": "log" } }"#,
    )
    .unwrap();
    let csv = dir.path().join("t.csv");
    let out = cvsteady(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 30);
    let e_n: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(e_n.windows(2).all(|w| w[1] <= w[0]));
    assert!(e_n[0] > 0.0 && e_n[29] == 0.0);
}

#[test]
fn bad_config_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, "{\n  \"axis1\": { \"name\": \"T\", \"min\": 0.1, \"max\": 0.3, \"count\": 3 },\n  \"extra\": 1\n}").unwrap();
    let out = cvsteady(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().join("o.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 3"));
}

#[test]
fn preset_coarse_threads_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (path, threads) in [(&a, "1"), (&b, "3")] {
        let out = cvsteady(&[
            "preset",
            "fig5",
            "--coarse",
            "--threads",
            threads,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (a, b) = (fs::read(a).unwrap(), fs::read(b).unwrap());
    assert_eq!(a, b);
    assert_eq!(a.iter().filter(|&&c| c == b'\n').count(), 1 + 21 * 21);
}
