use std::path::Path;
use std::process::{Command, Output};

use ris_highway::cli::{cmd_compare, cmd_sweep, CommonOptions, PlacementSpec};
use ris_highway::{los_profile, Mode, RoadScenario};

fn ris_highway(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ris-highway"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_scenario(dir: &Path, json: &str) -> String {
    let path = dir.join("scenario.json");
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn optimize_prints_positions() {
    let out = ris_highway(&["optimize", "--mode", "focusing", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0 30000");

    let out = ris_highway(&["optimize", "--mode", "beamforming", "--n", "2"]);
    assert!(out.status.success());
    let xs: Vec<u64> = stdout(&out)
        .split_whitespace()
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(xs.iter().sum::<u64>(), 30_000);
}

#[test]
fn optimize_writes_json_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("placement.json");
    let out = ris_highway(&["optimize", "--n", "3", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&out_path).unwrap()).unwrap();
    assert_eq!(doc["mode"], "focusing");
    assert_eq!(doc["positions"], serde_json::json!([0, 30000, 10]));
    assert_eq!(doc["objective_values"].as_array().unwrap().len(), 3);

    let manifest: serde_json::Value = serde_json::from_slice(
        &std::fs::read(dir.path().join("placement.json.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["command"], "optimize");
    assert_eq!(
        manifest["scenario_fingerprint"],
        RoadScenario::default().fingerprint()
    );
}

#[test]
fn exit_codes() {
    assert_eq!(ris_highway(&["--help"]).status.code(), Some(0));
    assert_eq!(ris_highway(&["--version"]).status.code(), Some(0));
    assert_eq!(
        ris_highway(&["optimize", "--n", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(
        ris_highway(&["optimize", "--n", "2", "--mode", "mirror"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(ris_highway(&["frobnicate"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let short = write_scenario(dir.path(), r#"{"length_D": 15}"#);
    let out = ris_highway(&["optimize", "--scenario", &short, "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("feasible set exhausted"));

    let broken = write_scenario(dir.path(), r#"{"base_stations": [{"y": 1.0}]}"#);
    let out = ris_highway(&["optimize", "--scenario", &broken, "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing key: base_stations[0].x"));

    let zero = write_scenario(dir.path(), r#"{"length_D": 0}"#);
    assert_eq!(
        ris_highway(&["sweep", "--scenario", &zero]).status.code(),
        Some(1)
    );
}

#[test]
fn empty_sweep_is_the_direct_path() {
    let out = ris_highway(&["sweep", "--placement", ""]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("vehicle_x_m,power_linear,power_db,capped")
    );
    assert_eq!(lines.count(), 3_000);

    let (profile, _) = cmd_sweep(
        &CommonOptions::default(),
        Mode::Focusing,
        &PlacementSpec::Explicit(vec![]),
    )
    .unwrap();
    assert_eq!(profile, los_profile(&RoadScenario::default()));
}

#[test]
fn sweep_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.csv");
    let args = [
        "sweep",
        "--mode",
        "beamforming",
        "--placement",
        "equidistant:2",
        "--out",
        path.to_str().unwrap(),
    ];
    assert!(ris_highway(&args).status.success());
    let first = std::fs::read(&path).unwrap();
    assert!(ris_highway(&args).status.success());
    assert_eq!(first, std::fs::read(&path).unwrap());
    assert!(dir.path().join("profile.csv.manifest.json").exists());
}

#[test]
fn size_sweep_csv_shape() {
    let out = ris_highway(&[
        "size-sweep",
        "--mode",
        "focusing",
        "--lengths",
        "3,6",
        "--n",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("side_length_m,vehicle_x_m,power_db,capped")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6_000);
    let mid = |side: &str| -> f64 {
        rows.iter()
            .find(|r| r[0] == side && r[1] == "15000")
            .map(|r| r[2].parse().unwrap())
            .unwrap()
    };
    let step = mid("6") - mid("3");
    assert!((step - 12.04).abs() <= 0.5, "{step}");

    assert_eq!(
        ris_highway(&["size-sweep", "--lengths", "2,1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ris_highway(&[
            "size-sweep",
            "--lengths",
            "11,14",
            "--mode",
            "beamforming",
            "--frozen",
            "841,29159"
        ])
        .status
        .code(),
        Some(0)
    );
}

#[test]
fn compare_orders_the_placements() {
    let report = cmd_compare(&CommonOptions::default(), 2).unwrap();
    assert_eq!(report.los_baseline.mean_gain_db, 0.0);
    assert!(report.optimized_focusing.mean_gain_db > report.equidistant_focusing.mean_gain_db);
    assert!(
        report.optimized_beamforming.mean_gain_db > report.equidistant_beamforming.mean_gain_db
    );
    assert!(
        report.optimized_focusing.midpoint_gain_db > report.optimized_beamforming.midpoint_gain_db
    );
    assert_eq!(report.optimized_focusing.placement, vec![0.0, 30_000.0]);

    let out = ris_highway(&["compare", "--n", "2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["n_units"], 2);
}

#[test]
fn wavelength_override_moves_beamforming_units() {
    let out = ris_highway(&[
        "optimize",
        "--mode",
        "beamforming",
        "--n",
        "1",
        "--wavelength",
        "0.00535",
    ]);
    assert!(out.status.success());
    let x: f64 = stdout(&out).trim().parse().unwrap();
    // half the wavelength doubles the critical distance
    assert!((x - 1682.0).abs() <= 3.0, "{x}");
}
