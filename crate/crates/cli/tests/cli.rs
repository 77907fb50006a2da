use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_minorant"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn harnack_center_distance() {
    let out = run(&["harnack", "--d", "2", "--r", "1", "--x", "0.5,0"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["closed_form"]["value"], 3.0);
    assert!((v["oracle"]["value"].as_f64().unwrap() - 3.0).abs() < 1e-6);
}

#[test]
fn harnack_same_point_is_one() {
    let v = json(&run(&["harnack", "--x", "0,0", "--y", "0,0"]));
    assert_eq!(v["closed_form"]["value"], 1.0);
    assert_eq!(v["oracle"]["value"], 1.0);
}

#[test]
fn harnack_pair_in_disc() {
    let v = json(&run(&["harnack", "--x", "0.3,0.1", "--y", "-0.2,0.4"]));
    let closed = v["closed_form"]["value"].as_f64().unwrap();
    let oracle = v["oracle"]["value"].as_f64().unwrap();
    let triangle = v["triangle_upper"]["value"].as_f64().unwrap();
    assert!((closed - oracle).abs() < 1e-8 * closed);
    assert!(triangle >= closed);
}

#[test]
fn harnack_three_dimensions() {
    let v = json(&run(&["harnack", "--d", "3", "--r", "2", "--x", "0,1,0"]));
    // (2 + 1) * 2 / 1^2
    assert!((v["closed_form"]["value"].as_f64().unwrap() - 6.0).abs() < 1e-12);
    assert!((v["oracle"]["value"].as_f64().unwrap() - 6.0).abs() < 1e-6);
}

#[test]
fn harnack_rejects_outside_point() {
    let out = run(&["harnack", "--x", "1.5,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("x outside ball"));
    let out = run(&["harnack", "--x", "0.1,0", "--y", "0,-2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("y outside ball"));
}

#[test]
fn harnack_rejects_wrong_dimension() {
    let out = run(&["harnack", "--d", "3", "--x", "0.1,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("invalid x"));
}

#[test]
fn content_segment_and_cluster() {
    let seg = data("segment.txt");
    let v = json(&run(&["content", "--points", seg.to_str().unwrap(), "--r", "0.5"]));
    assert!((v["estimate"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["estimate"]["method"], "single_ball");

    let cluster = data("cluster.txt");
    let v = json(&run(&["content", "--points", cluster.to_str().unwrap(), "--r", "0.5"]));
    // The single enclosing ball has radius 1e-3, so h_1 costs at most 2e-3.
    assert!(v["estimate"]["value"].as_f64().unwrap() <= 2e-3 + 1e-12);
}

#[test]
fn content_empty_and_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let v = json(&run(&["content", "--points", empty.to_str().unwrap(), "--r", "1"]));
    assert_eq!(v["estimate"]["value"], 0.0);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "0.1,0.2\nzero,1\n").unwrap();
    let out = run(&["content", "--points", bad.to_str().unwrap(), "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"));
}

#[test]
fn certify_worked_example() {
    let cfg = data("worked_example.json");
    let out = run(&["certify", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    let sup = v["verification"]["problem"]["boundary_sup"].as_f64().unwrap();
    let lb = v["certificate"]["lower_bound"].as_f64().unwrap();
    assert!((lb + 4.0 * sup).abs() < 1e-12);
    assert!((sup - 5.0 * (1.3f64 / 0.3).ln()).abs() < 1e-9);
    assert_eq!(v["verification"]["pointwise_violations"], 0);
    assert_eq!(v["verification"]["budget_exceeded"], false);
    assert_eq!(v["series"], Value::Null);
}

#[test]
fn certify_empty_zero_list() {
    let cfg = data("empty.json");
    let v = json(&run(&["certify", "--config", cfg.to_str().unwrap()]));
    assert_eq!(v["verification"]["pointwise_violations"], 0);
    assert_eq!(v["verification"]["exceptional_points"].as_array().unwrap().len(), 0);
    assert_eq!(v["certificate"]["lower_bound"], 0.0);
}

#[test]
fn certify_writes_series() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = data("worked_example.json");
    let out = run(&["certify", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["series"]["bound_levels"], "bound_levels.csv");

    let levels = std::fs::read_to_string(dir.path().join("bound_levels.csv")).unwrap();
    assert!(levels.starts_with("term,value\n"));
    for line in levels.lines().skip(1) {
        let (name, value) = line.split_once(',').unwrap();
        assert!(!name.is_empty());
        let parsed: f64 = value.parse().unwrap();
        // 17 significant digits round-trip exactly.
        assert_eq!(format!("{parsed:.16e}"), value);
    }
    let rays = std::fs::read_to_string(dir.path().join("u_along_rays.csv")).unwrap();
    assert_eq!(rays.lines().count(), 1 + 8 * 200);
    let exc = std::fs::read_to_string(dir.path().join("exceptional_points.csv")).unwrap();
    assert!(exc.starts_with("re,im\n"));
}

#[test]
fn certify_seed_draws_random_sample() {
    let cfg = data("random.json");
    let a = json(&run(&["certify", "--config", cfg.to_str().unwrap()]));
    let b = json(&run(&["certify", "--config", cfg.to_str().unwrap(), "--seed", "12"]));
    assert_eq!(a["seed"], 11);
    assert_eq!(b["seed"], 12);
    assert_ne!(a["sample"], b["sample"]);
    assert_eq!(b["verification"]["pointwise_violations"], 0);
}

#[test]
fn certify_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let base = std::fs::read_to_string(data("worked_example.json")).unwrap();
    let cases = [
        (write("p0.json", &base.replace("\"p\": 1.0", "\"p\": 0.0")), "gauge.p"),
        (write("s0.json", &base.replace("\"s0\": 0.25", "\"s0\": 0.5")), "problem.s0"),
        (write("r.json", &base.replace("\"r\": 1.0", "\"r\": 1.5")), "problem.r"),
        (write("key.json", &base.replace("\"seed\"", "\"sead\"")), "unknown field `sead`"),
        (write("origin.json", &base.replace("[0.3, 0.0, 5]", "[0.0, 0.0, 1]")), "zeros"),
        (write("syntax.json", "{"), "EOF"),
    ];
    for (path, needle) in cases {
        let out = run(&["certify", "--config", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{needle}: {}", stderr(&out));
        assert!(stderr(&out).contains(needle), "{needle}: {}", stderr(&out));
    }
    let out = run(&["certify", "--config", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_cap_is_validated_and_harmless() {
    let cfg = data("worked_example.json");
    let one = bin()
        .env("MINORANT_THREADS", "1")
        .args(["certify", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    let many = bin()
        .env("MINORANT_THREADS", "4")
        .args(["certify", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(one.stdout, many.stdout);
    let bad = bin()
        .env("MINORANT_THREADS", "0")
        .args(["certify", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
