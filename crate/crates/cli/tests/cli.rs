use std::path::Path;
use std::process::{Command, Output};

use neoplasm_opt::preprocess::{read_nrm1, write_pgm, GrayImage, PgmFormat};
use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neoplasm-opt"))
        .args(args)
        .current_dir(dir)
        .env_remove("NEOPLASM_OPT_THREADS")
        .output()
        .unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

fn write_image(dir: &Path, name: &str, img: &GrayImage) {
    let mut buf = Vec::new();
    write_pgm(img, PgmFormat::Binary, &mut buf).unwrap();
    std::fs::write(dir.join(name), buf).unwrap();
}

#[test]
fn optimize_prints_final_json_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["optimize", "--alg", "hho", "--objective", "sphere", "--dims", "5", "--iters", "60", "-o", "t.csv"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let last: Value = serde_json::from_str(stdout.lines().last().unwrap()).unwrap();
    assert!(last["best_fitness"].as_f64().unwrap() < 1e-3);
    assert_eq!(last["best_position"].as_array().unwrap().len(), 5);
    assert_eq!(last["evals"], 30 + 60 * 30);

    let csv = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "iteration,best_fitness,mean_fitness,evals");
    assert_eq!(csv.lines().count(), 61);
    let manifest = json(&dir.path().join("t.manifest.json"));
    assert_eq!(manifest["command"], "optimize");
    assert_eq!(manifest["config"]["dims"], 5);
    assert_eq!(manifest["seed"], 42);
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for (args, needle) in [
        (vec!["optimize", "--alg", "pso", "-o", "x.csv"], "hho, ba, ssa, gwo"),
        (vec!["optimize", "--objective", "griewank", "-o", "x.csv"], "sphere"),
        (vec!["optimize", "--dims", "0", "-o", "x.csv"], "dims"),
        (vec!["optimize", "--alg", "gwo", "--pop", "2", "-o", "x.csv"], "population"),
        (vec!["tune", "--objective", "sphere", "--ssa-budget", "10", "-o", "x.json"], "budget"),
        (vec!["tune", "-o", "x.json"], "required"),
        (vec!["preprocess", "missing.pgm", "-o", "x.nrm1"], "missing.pgm"),
    ] {
        let out = run(d, &args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        let err = stderr(&out);
        assert!(err.starts_with("error:"), "{err}");
        assert!(err.contains(needle), "{args:?}: {err}");
        assert!(!d.join("x.csv").exists() && !d.join("x.json").exists());
    }
}

#[test]
fn bad_thread_env_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_neoplasm-opt"))
        .args(["optimize", "-o", "x.csv"])
        .current_dir(dir.path())
        .env("NEOPLASM_OPT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("NEOPLASM_OPT_THREADS"));
}

#[test]
fn unwritable_output_is_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["optimize", "--iters", "2", "-o", "no/such/dir/t.csv"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn preprocess_constant_and_stages() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_image(d, "flat.pgm", &GrayImage::filled(24, 20, 140).unwrap());
    let out = run(d, &["preprocess", "flat.pgm", "-o", "flat.nrm1", "--dump-stages", "stages"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let nrm = read_nrm1(&std::fs::read(d.join("flat.nrm1")).unwrap()[..]).unwrap();
    assert_eq!((nrm.width(), nrm.height()), (24, 20));
    assert!(nrm.values().iter().all(|&v| v == 0.0));
    for name in ["1_clahe.pgm", "2_gaussian.pgm", "3_median.pgm"] {
        assert!(d.join("stages").join(name).exists(), "{name}");
    }
    let manifest = json(&d.join("flat.manifest.json"));
    assert_eq!(manifest["inputs"][0]["path"], "flat.pgm");
    assert_eq!(manifest["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn truncated_pgm_leaves_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("cut.pgm"), b"P5\n8 8\n255\n\x01\x02\x03").unwrap();
    let out = run(d, &["preprocess", "cut.pgm", "-o", "cut.nrm1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("byte 14"), "{}", stderr(&out));
    let leftovers: Vec<_> = std::fs::read_dir(d).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(leftovers, vec!["cut.pgm"]);
}

#[test]
fn preprocess_flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_image(d, "img.pgm", &GrayImage::from_fn(16, 16, |x, y| (x * 13 + y * 7) as u8).unwrap());
    std::fs::write(
        d.join("cfg.json"),
        r#"{"input": "img.pgm", "clahe": {"tile_grid": [2, 2]}, "gaussian": {"sigma": 0.5}}"#,
    )
    .unwrap();
    let out = run(d, &["preprocess", "--config", "cfg.json", "--sigma", "1.5", "-o", "o.nrm1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let cfg = &json(&d.join("o.manifest.json"))["config"];
    assert_eq!(cfg["clahe"]["tile_grid"], serde_json::json!([2, 2]));
    assert_eq!(cfg["clahe"]["clip_limit"], 2.0);
    assert_eq!(cfg["gaussian"]["sigma"], 1.5);
    assert_eq!(cfg["gaussian"]["kernel_size"], 5);

    std::fs::write(d.join("typo.json"), r#"{"clahe": {"clip": 3}}"#).unwrap();
    let out = run(d, &["preprocess", "img.pgm", "--config", "typo.json", "-o", "t.nrm1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn manifest_of_other_command_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(run(d, &["optimize", "--iters", "3", "-o", "t.csv"]).status.success());
    let out = run(d, &["select", "--config", "t.manifest.json", "-o", "s.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("optimize"));
}

#[test]
fn select_reports_truth_and_rejects_bad_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(run(d, &["synth", "--samples", "60", "--sep", "3", "-o", "data.csv"]).status.success());
    let out = run(d, &["select", "--data", "data.csv", "--pop", "10", "--iters", "30", "-o", "r.json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = json(&d.join("r.json"));
    assert_eq!(r["mask"].as_array().unwrap().len(), 10);
    assert_eq!(r["trace"], "r.trace.csv");
    assert!(d.join("r.trace.csv").exists());
    assert!(r["ground_truth"]["recall"].is_number());
    assert!(r["cv_accuracy"].as_f64().unwrap() > 0.8);

    std::fs::write(d.join("one.csv"), "a,b,label\n1,2,0\n3,4,0\n5,6,0\n7,8,0\n9,1,0\n").unwrap();
    let out = run(d, &["select", "--data", "one.csv", "-o", "one.json"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));

    std::fs::write(d.join("bad.csv"), "a,b,label\n1,2,0\n3,x,1\n").unwrap();
    let out = run(d, &["select", "--data", "bad.csv", "-o", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("row 3") && err.contains("column 2"), "{err}");
}

#[test]
fn tune_objective_and_surrogate() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run(d, &["tune", "--objective", "ackley", "--ssa-budget", "300", "--gwo-budget", "300", "-o", "a.json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = json(&d.join("a.json"));
    let s1 = r["stage1"]["best_fitness"].as_f64().unwrap();
    assert!(r["final"]["best_fitness"].as_f64().unwrap() <= s1);
    assert!(d.join("a.stage1.trace.csv").exists() && d.join("a.stage2.trace.csv").exists());

    assert!(run(d, &["synth", "--samples", "80", "--sep", "4", "-o", "far.csv"]).status.success());
    let out = run(d, &["tune", "--surrogate", "far.csv", "--ssa-budget", "60", "--gwo-budget", "60", "-o", "s.json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let s = &json(&d.join("s.json"))["surrogate"];
    assert_eq!(s["k"].as_u64().unwrap() % 2, 1);
    assert!(s["tuned_accuracy"].as_f64().unwrap() >= s["default_accuracy"].as_f64().unwrap());
}
