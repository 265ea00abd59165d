use std::path::Path;
use std::process::{Command, Output};
use tbdecay_cli::output::parse_table;

fn tbdecay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tbdecay"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_record(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stderr).expect("stderr holds a JSON record")
}

#[test]
fn exact_emits_documented_columns() {
    let o = tbdecay(&["exact", "--delta", "0.5", "--tmax", "30", "--dt", "0.1"]);
    assert!(o.status.success());
    let t = parse_table(&stdout(&o)).unwrap();
    assert_eq!(
        t.columns,
        ["t[1/hop]", "re_c1", "im_c1", "P", "gamma_eff[hop]"]
    );
    assert_eq!(t.rows.len(), 301);
    for r in &t.rows {
        let p = r[1] * r[1] + r[2] * r[2];
        assert!((p - r[3]).abs() < 1e-11);
    }
}

#[test]
fn csv_round_trips_at_printed_precision() {
    let o = tbdecay(&["exact", "--delta", "0.7", "--tmax", "5", "--dt", "0.5"]);
    let t = parse_table(&stdout(&o)).unwrap();
    let m = tbdecay::CouplingModel::new(0.7).unwrap();
    for r in &t.rows {
        let c = tbdecay::exact_amplitude(&m, r[0]);
        assert!((r[1] - c.re).abs() <= 1e-11 * c.re.abs().max(1e-300) + 1e-300);
    }
}

#[test]
fn json_format() {
    let o = tbdecay(&["exact", "--delta", "0.5", "--tmax", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["columns"][0], "t[1/hop]");
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);
}

#[test]
fn zeno_reports_crossing_near_85() {
    let o = tbdecay(&["zeno", "--delta", "0.3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let tau = v["tau_star[1/hop]"].as_f64().unwrap();
    assert!((76.5..=93.5).contains(&tau), "{tau}");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "delta = 0.3\ntmax = 2.0\ndt = 0.5\nformat = \"csv\"\n",
    )
    .unwrap();
    let out = dir.path().join("c1.csv");
    let o = tbdecay(&[
        "exact",
        "--config",
        cfg.to_str().unwrap(),
        "--delta",
        "0.6",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = parse_table(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(t.rows.len(), 5);
    // P(t) ≈ 1 - Δ²t² identifies which Δ was used
    let p = t.rows[1][3];
    assert!((1.0 - p) / 0.25 > 0.3, "delta override ignored");
}

#[test]
fn exit_codes() {
    let usage = tbdecay(&["exact", "--nope"]);
    assert_eq!(usage.status.code(), Some(2));
    assert_eq!(error_record(&usage)["error"], "usage");

    let invalid = tbdecay(&["exact", "--delta", "1.2"]);
    assert_eq!(invalid.status.code(), Some(3));
    assert_eq!(error_record(&invalid)["exit_code"], 3);

    let missing = tbdecay(&["zeno"]);
    assert_eq!(missing.status.code(), Some(3));

    let io = tbdecay(&["exact", "--delta", "0.5", "--config", "/no/such/file.toml"]);
    assert_eq!(io.status.code(), Some(5));

    let badcfg = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(badcfg.path(), "gamma = 3\n").unwrap();
    let o = tbdecay(&["exact", "--config", badcfg.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn numerical_failure_exit_code() {
    // a channel this narrow binds no mode
    let o = tbdecay(&["modes", "--channel-width", "0.3", "--delta-n", "1e-5"]);
    assert_eq!(
        o.status.code(),
        Some(4),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(error_record(&o)["error"], "numerical");
}

#[test]
fn evolve_matches_exact() {
    let o = tbdecay(&["evolve", "--delta", "0.5", "--tmax", "5", "--show", "3"]);
    let t = parse_table(&stdout(&o)).unwrap();
    assert_eq!(t.columns.len(), 2 + 2 * 3);
    let m = tbdecay::CouplingModel::new(0.5).unwrap();
    for r in &t.rows {
        assert!((r[2] - tbdecay::exact_amplitude(&m, r[0]).re).abs() < 1e-6);
    }
}

#[test]
fn bpm_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.csv");
    let o = tbdecay(&[
        "bpm",
        "--zmax",
        "0.5",
        "--n-guides",
        "6",
        "--map-every",
        "0.1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let c1 = parse_table(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(c1.columns[0], "z[mm]");
    assert!(c1.rows.iter().all(|r| r[4] <= 1.0 + 1e-9));
    let map = std::fs::read_to_string(dir.path().join("run_intensity.csv")).unwrap();
    assert_eq!(map.lines().count(), 1 + 6);
    assert!(map.starts_with("z[mm]\\x[um],"));
    assert!(Path::new(&dir.path().join("run_coupling.csv")).exists());
}

#[test]
fn modes_reports_single_mode() {
    let o = tbdecay(&["modes", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["single_mode"], true);
    assert!((v["delta"].as_f64().unwrap() - 0.28).abs() < 0.05);
}

#[test]
fn figure_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let o = tbdecay(&["figure", "fig2", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let g0 =
        parse_table(&std::fs::read_to_string(dir.path().join("fig2_gamma0.csv")).unwrap()).unwrap();
    let deltas: Vec<f64> = g0.rows.iter().map(|r| r[0]).collect();
    assert_eq!(deltas, [0.3, 0.5, 0.9]);
    for d in ["0.3", "0.5", "0.9"] {
        assert!(dir.path().join(format!("fig2_map_delta{d}.csv")).exists());
    }
}

#[test]
fn help_exits_cleanly() {
    assert!(tbdecay(&["--help"]).status.success());
}
