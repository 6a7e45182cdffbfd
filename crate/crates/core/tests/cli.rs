// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bakershift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bakershift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn column(csv: &str, idx: usize) -> Vec<String> {
    csv.lines()
        .skip(2)
        .map(|l| l.split(',').nth(idx).unwrap().to_string())
        .collect()
}

#[test]
fn verify_default_grid_passes() {
    let out = bakershift(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["passed"], true);
    assert_eq!(report["dims"].as_array().unwrap().len(), 127);
    for check in report["checks"].as_array().unwrap() {
        assert!(check["max_deviation"].as_f64().unwrap() <= 1e-10, "{check}");
    }
}

#[test]
fn verify_fault_fails_and_alpha_passes() {
    assert_eq!(
        bakershift(&["verify", "--N", "4..=20", "--self-test-fault"])
            .status
            .code(),
        Some(1)
    );
    let out = bakershift(&["verify", "--N", "4..=64", "--alpha", "0.37"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["alphas"][3], 0.37);
}

#[test]
fn fidelity_writes_one_csv_per_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = bakershift(&[
        "fidelity",
        "--N",
        "250,252,254,256",
        "--pauli",
        "y",
        "--theta",
        "0.05",
        "--alpha",
        "0",
        "--out",
        d,
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for (n, predicted) in [(250, 41), (252, 25), (254, 110), (256, 8)] {
        let csv = fs::read_to_string(dir.path().join(format!("fidelity_N{n}.csv"))).unwrap();
        assert!(csv.starts_with(&format!(
            "# command=fidelity N={n} theta=0.05 alpha=0 pauli=y"
        )));
        assert_eq!(csv.lines().nth(1), Some("t,f,f_model,flags"));
        let side = read_json(&dir.path().join(format!("fidelity_N{n}.json")));
        assert_eq!(side["predicted_shoulder"], predicted);
        let first = side["first_detection"].as_i64().unwrap();
        assert!((first - predicted).abs() <= 2, "N={n}: {first}");
    }
}

#[test]
fn fidelity_sigma_x_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = bakershift(&[
        "fidelity", "--N", "254", "--pauli", "x", "--alpha", "0", "--theta", "0.3", "--T", "300",
        "--out", d,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("fidelity_N254.csv")).unwrap();
    let f = column(&csv, 1);
    assert_eq!(f.len(), 301);
    assert!(f
        .iter()
        .all(|v| (v.parse::<f64>().unwrap() - 1.0).abs() <= 1e-10));
}

#[test]
fn invalid_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for args in [
        vec!["fidelity", "--N", "254", "--T", "0", "--out", d],
        vec!["fidelity", "--N", "253", "--out", d],
        vec!["fidelity", "--N", "254", "--pauli", "w", "--out", d],
        vec!["spectrum", "--N", "100", "--cap", "20", "--out", d],
        vec!["order", "250"],
    ] {
        let out = bakershift(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn spectrum_even_sector_prefers_goe() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = bakershift(&[
        "spectrum", "--N", "510", "--theta", "0.3", "--pauli", "x", "--alpha", "0.5", "--sector",
        "even", "--out", d,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = read_json(&dir.path().join("spectrum_N510_even.json"));
    assert_eq!(report["count"], 255);
    assert!(report["ks_goe"].as_f64().unwrap() < report["ks_poisson"].as_f64().unwrap());
    let hist = fs::read_to_string(dir.path().join("spectrum_N510_even_histogram.csv")).unwrap();
    assert_eq!(hist.lines().nth(1), Some("s,density,goe,poisson,count"));
    assert_eq!(hist.lines().count(), 42);
}

#[test]
fn spectrum_unperturbed_is_degenerate() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = bakershift(&["spectrum", "--N", "254", "--theta", "0", "--out", d]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert!(report["degenerate_fraction"].as_f64().unwrap() > 0.1);
    let hist = fs::read_to_string(dir.path().join("spectrum_N254_even_histogram.csv")).unwrap();
    let first: Vec<f64> = hist
        .lines()
        .nth(2)
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    // Zero-spacing bin towers over both reference laws.
    assert!(first[1] > first[2] && first[1] > first[3]);
}

#[test]
fn spectrum_odd_sector_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = bakershift(&[
        "spectrum",
        "--N",
        "100",
        "--sector",
        "odd",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(json(&out)["count"], 50);
    assert_eq!(json(&out)["source"]["sector"], "odd");
}

#[test]
fn outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let d = dir.path().to_str().unwrap();
        assert!(bakershift(&[
            "spectrum",
            "--synthetic",
            "poisson",
            "--samples",
            "5000",
            "--seed",
            "9",
            "--out",
            d
        ])
        .status
        .success());
        assert!(
            bakershift(&["fidelity", "--N", "64,66", "--pauli", "z", "--out", d])
                .status
                .success()
        );
    }
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 7);
    for name in names {
        assert_eq!(
            fs::read(a.path().join(&name)).unwrap(),
            fs::read(b.path().join(&name)).unwrap(),
            "{name:?}"
        );
    }
}

#[test]
fn order_prints_json() {
    for (m, order, half, shoulder) in [
        (253, 110, false, 110),
        (255, 8, false, 8),
        (9, 6, true, 3),
        (251, 50, true, 25),
    ] {
        let out = bakershift(&["order", &m.to_string()]);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout.clone()).unwrap();
        let keys: Vec<usize> = [
            "modulus",
            "order",
            "half_order_is_minus_one",
            "predicted_shoulder",
        ]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        let v = json(&out);
        assert_eq!(
            (
                v["order"].as_u64(),
                v["half_order_is_minus_one"].as_bool(),
                v["predicted_shoulder"].as_u64()
            ),
            (Some(order), Some(half), Some(shoulder))
        );
    }
}
