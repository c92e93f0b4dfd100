// Copyright 2026 stirap Contributors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end checks of the binary: exit codes, file outputs, overrides and
//! worker-count determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn stirap() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stirap"))
}

fn run(args: &[&str]) -> Output {
    stirap().args(args).output().expect("binary runs")
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stirap-cli-test-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn single_file_matching(dir: &Path, prefix: &str, extension: &str) -> PathBuf {
    let mut matches: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| {
            p.extension().and_then(|e| e.to_str()) == Some(extension)
                && p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.starts_with(prefix))
        })
        .collect();
    assert_eq!(
        matches.len(),
        1,
        "expected exactly one {prefix}*.{extension} file in {dir:?}"
    );
    matches.pop().unwrap()
}

#[test]
fn evolve_without_drive_stays_in_the_ground_state() {
    let dir = tmp_dir("evolve-zero");
    let out = run(&[
        "evolve",
        "--preset",
        "paper-fig2",
        "--omega0-mhz",
        "0",
        "--phi-samples",
        "1",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout_of(&out).contains("max_P2 = 0.0000"));
    let traj = single_file_matching(&dir, "trajectory_", "csv");
    let text = fs::read_to_string(traj).unwrap();
    assert!(text.starts_with("t_ns,P0,P1,P2\n"));
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("300"), "last sample at +3 T_d: {last}");
    let summary = single_file_matching(&dir, "summary_", "json");
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(summary).unwrap()).unwrap();
    assert_eq!(json["results"]["max_p2"], 0.0);
    assert!(json["fingerprint"].as_str().unwrap().len() == 16);
}

#[test]
fn evolve_writes_full_state_on_request() {
    let dir = tmp_dir("evolve-full");
    let out = run(&[
        "evolve",
        "--preset",
        "paper-fig2",
        "--omega0-mhz",
        "0",
        "--phi-samples",
        "1",
        "--full-state",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let states = single_file_matching(&dir, "states_", "csv");
    let header = fs::read_to_string(states).unwrap();
    assert!(header.starts_with("t_ns,re_00,im_00,re_01,im_01"));
}

#[test]
fn missing_scenario_source_is_a_config_error() {
    let out = run(&["evolve"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn unknown_preset_is_a_config_error() {
    let out = run(&["evolve", "--preset", "paper-fig9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_config_file_is_a_config_error() {
    let dir = tmp_dir("bad-config");
    let path = dir.join("bad.json");
    fs::write(&path, "{\"qutrit\": {}}").unwrap();
    let out = run(&["evolve", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_with_unknown_key_is_rejected() {
    let dir = tmp_dir("typo-config");
    let path = dir.join("typo.json");
    fs::write(
        &path,
        r#"{
            "qutrit": {"f10_mhz": 5555.0, "f21_mhz": 5393.0, "lambda": 1.45,
                       "gamma10_per_s": 2.83e6, "gamma21_per_s": 5.1e6, "gphi10_per_s": 8.06e6},
            "drive": {"omega0_mhz": 42.8, "td_ns": 100.0},
            "integrater": {}
        }"#,
    )
    .unwrap();
    let out = run(&["check", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coarse_integrator_step_is_a_config_error() {
    let out = run(&["evolve", "--preset", "paper-fig2", "--dt-ps", "1000"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_passes_on_the_operating_point_and_fails_for_short_pulses() {
    let out = run(&["check", "--preset", "paper-fig2"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout_of(&out);
    assert!(text.contains("CHECK PASS"));
    assert!(text.contains("31.77 pi"));

    // T_d = 10 ns scales the area down to about 3.2 pi, below the 10 pi bar.
    let out = run(&["check", "--preset", "paper-fig2", "--td-ns", "10"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("CHECK FAIL"));
    assert!(text.contains("pulse area: 9.98 rad = 3.18 pi"));

    // Driving at 150 MHz against the 162 MHz tone gap breaks the
    // tone-separation condition (ratio 1.08 < 3) even though the area grows.
    let out = run(&["check", "--preset", "paper-fig2", "--omega0-mhz", "150"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("tone separation: delta / peak Rabi = 1.08"));
    assert!(text.contains("CHECK FAIL"));
}

#[test]
fn tomography_roundtrips_and_rejects_singular_calibration() {
    let dir = tmp_dir("tomography");
    // Forward-generated batch from the demo calibration:
    // P = (1,0,0) -> (0.05, 0.0); P = (0.1, 0.2, 0.7) -> (0.755, 0.5).
    let input = dir.join("measured.csv");
    fs::write(&input, "pA,pB\n0.05,0.0\n0.755,0.5\n").unwrap();
    let out = run(&[
        "tomography",
        "--preset",
        "paper-fig2",
        "--input",
        input.to_str().unwrap(),
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = fs::read_to_string(dir.join("populations.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "P0,P1,P2,P0_clamped,P1_clamped,P2_clamped"
    );
    let first: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert!((first[0] - 1.0).abs() < 1e-12);
    let second: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert!((second[0] - 0.1).abs() < 1e-12);
    assert!((second[1] - 0.2).abs() < 1e-12);
    assert!((second[2] - 0.7).abs() < 1e-12);

    // Identical pulses A and B cannot be inverted: exit 4.
    let config = dir.join("singular.json");
    fs::write(
        &config,
        r#"{
            "qutrit": {"f10_mhz": 5555.0, "f21_mhz": 5393.0, "lambda": 1.45,
                       "gamma10_per_s": 2.83e6, "gamma21_per_s": 5.1e6, "gphi10_per_s": 8.06e6},
            "drive": {"omega0_mhz": 42.8, "td_ns": 100.0},
            "calibration": {"p_a": [0.05, 0.6, 0.9], "p_b": [0.05, 0.6, 0.9]}
        }"#,
    )
    .unwrap();
    let out = run(&[
        "tomography",
        "--config",
        config.to_str().unwrap(),
        "--input",
        input.to_str().unwrap(),
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4), "{out:?}");
}

#[test]
fn sweep_with_unknown_axis_is_a_config_error() {
    let out = run(&[
        "sweep",
        "--preset",
        "paper-fig2",
        "--axis1",
        "warp_factor=0:10:1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_output_is_byte_identical_across_worker_counts() {
    let dir1 = tmp_dir("sweep-w1");
    let dir2 = tmp_dir("sweep-w2");
    // Small detuning scan around the two-photon resonance.
    let common = [
        "sweep",
        "--preset",
        "paper-fig2",
        "--delta-s-mhz",
        "20",
        "--axis1",
        "delta_p=-24:-16:4",
        "--metric",
        "max_p2",
        "--phi-samples",
        "6",
    ];
    let out1 = run(&[&common[..], &["--workers", "1", "--out-dir", dir1.to_str().unwrap()]].concat());
    assert!(out1.status.success(), "{out1:?}");
    let out2 = run(&[&common[..], &["--workers", "2", "--out-dir", dir2.to_str().unwrap()]].concat());
    assert!(out2.status.success(), "{out2:?}");
    let csv1 = fs::read(single_file_matching(&dir1, "sweep_", "csv")).unwrap();
    let csv2 = fs::read(single_file_matching(&dir2, "sweep_", "csv")).unwrap();
    assert!(!csv1.is_empty());
    assert_eq!(csv1, csv2, "worker count changed the sweep output");
    // Rerunning overwrites the same fingerprinted file deterministically.
    let out3 = run(&[&common[..], &["--workers", "2", "--out-dir", dir1.to_str().unwrap()]].concat());
    assert!(out3.status.success());
    let csv3 = fs::read(single_file_matching(&dir1, "sweep_", "csv")).unwrap();
    assert_eq!(csv1, csv3);
}

#[test]
fn detuning_sweep_reports_peaks_in_the_sidecar() {
    let dir = tmp_dir("sweep-peaks");
    let out = run(&[
        "sweep",
        "--preset",
        "paper-fig2",
        "--delta-s-mhz",
        "20",
        "--axis1",
        "delta_p=-26:-12:2",
        "--phi-samples",
        "4",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout_of(&out).contains("left peak"));
    let sidecar = single_file_matching(&dir, "sweep_", "json");
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(sidecar).unwrap()).unwrap();
    let left = json["results"]["left_peak_at_mhz"].as_f64().unwrap();
    assert!((left + 20.0).abs() < 2.0, "left peak at {left} MHz");
}

#[test]
fn pulses_subcommand_emits_envelope_csv() {
    let dir = tmp_dir("pulses");
    let out = run(&[
        "pulses",
        "--preset",
        "paper-fig2",
        "--samples",
        "11",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let path = single_file_matching(&dir, "envelopes_", "csv");
    let text = fs::read_to_string(path).unwrap();
    assert!(text.starts_with("t_ns,omega_p_mhz,omega_s_mhz\n"));
    assert_eq!(text.lines().count(), 12);
}
