use std::path::Path;
use std::process::Command;

use anosov_lab_cli::Summary;

fn run(args: &[&str], dir: &Path) -> (i32, Summary) {
    let out = Command::new(env!("CARGO_BIN_EXE_anosov-lab"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let summary = serde_json::from_slice(&out.stdout).unwrap_or(Summary {
        subcommand: String::new(),
        pass: false,
        metrics: Default::default(),
    });
    (code, summary)
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn frames_check_passes_on_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let (code, s) = run(&["frames", "check"], dir.path());
    assert_eq!(code, 0);
    assert!(s.pass);
    assert_eq!(s.subcommand, "frames check");
    for key in ["bracket_vx_minus_h", "bracket_hx_minus_v", "bracket_hv_minus_x"] {
        assert!(s.metrics[key].as_f64().unwrap() <= 1e-12);
    }
    let written: Summary =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("frames-check.summary.json")).unwrap()).unwrap();
    assert_eq!(written, s);
}

#[test]
fn identical_runs_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let config = write_config(a.path(), r#"{"cones": {"n_sequences": 500, "seed": 7}}"#);
    for (dir, workers) in [(a.path(), "1"), (b.path(), "4")] {
        let (code, _) = run(&["--config", &config, "--workers", workers, "--format", "csv", "cones", "sweep"], dir);
        assert_eq!(code, 0);
    }
    let read = |d: &Path| std::fs::read(d.join("cones-sweep.csv")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
}

#[test]
fn sweep_csv_has_verdicts_by_twist_sign() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), r#"{"cones": {"n_sequences": 300}}"#);
    let (code, _) = run(&["--config", &config, "--format", "csv", "cones", "sweep"], dir.path());
    assert_eq!(code, 0);
    let csv = std::fs::read_to_string(dir.path().join("cones-sweep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "q,epsilon,t_min,n_sequences,min_margin,verdict");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 21);
    for r in &rows {
        let q: i64 = r[0].parse().unwrap();
        let eps: f64 = r[1].parse().unwrap();
        if q > 0 {
            assert_eq!(r[5], "certified");
        }
        if q < 0 && eps <= 1.0 {
            assert_eq!(r[5], "cone-flip", "{r:?}");
        }
    }
    // a weak negative twist on a wide collar triggers no flip
    assert!(rows.iter().any(|r| r[0] == "-1" && r[1] == "10" && r[5] != "cone-flip"));
}

#[test]
fn config_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), r#"{"surgery": {"epsilon": 0.2, "eta": 1.0}}"#);
    let out = Command::new(env!("CARGO_BIN_EXE_anosov-lab"))
        .args(["--config", &config, "frames", "check"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("surgery.epsilon"));
}

#[test]
fn failed_checks_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    // |inf f′| = 1/(1.6·0.4) stays below 2e^{−0.01}, so q = −1 has no flip witness
    let config = write_config(
        dir.path(),
        r#"{"surgery": {"q": -1, "epsilon": 0.4, "eta": 3.0}, "cones": {"n_sequences": 100, "t_min": 0.01, "t_max": 0.5}}"#,
    );
    let (code, s) = run(&["--config", &config, "cones", "certify"], dir.path());
    assert_eq!(code, 1, "{s:?}");
    assert!(!s.pass);
    assert_eq!(s.metrics["flip_detected"], serde_json::json!(false));
}

#[test]
fn negative_twist_certify_reports_a_flip_witness() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), r#"{"surgery": {"q": -1}, "cones": {"n_sequences": 100}}"#);
    let (code, s) = run(&["--config", &config, "cones", "certify"], dir.path());
    assert_eq!(code, 0);
    assert!(s.metrics["flip_df"].as_f64().unwrap() <= s.metrics["flip_threshold"].as_f64().unwrap());
}

#[test]
fn census_and_farey_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), r#"{"census": {"max_length": 10.0, "fit_from": 6.0, "farey_t": 1000.0, "max_letters": 9}}"#);
    let (code, s) = run(&["--config", &config, "census", "disjoint"], dir.path());
    assert_eq!((code, s.metrics["length_1"].as_u64(), s.metrics["length_2"].as_u64()), (0, Some(4), Some(4)));
    let (code, s) = run(&["--config", &config, "--format", "csv", "farey", "run"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(s.metrics["totient_identity"], serde_json::json!(true));
    let csv = std::fs::read_to_string(dir.path().join("farey-run.csv")).unwrap();
    assert!(csv.starts_with("p,q_w,w,period\n1,2,0,"));
    let (_, s) = run(&["--config", &config, "census", "geodesics"], dir.path());
    assert_eq!(s.metrics["classes"].as_u64().unwrap() % 2, 0);
    assert_eq!(s.metrics["orbit_type_on_torus"].as_u64(), Some(4));
}
