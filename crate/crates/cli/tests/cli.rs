use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clifford_mellin::imaging::synth;
use clifford_mellin::io::encode_signal;
use clifford_mellin::{GridGeometry, LogPolarSignal, Multivector, Signature};
use clifford_mellin_cli::config::RunConfig;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_clifford-mellin"));
    c.env_remove("CLIFFORD_MELLIN_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: stdout {} stderr {}",
            String::from_utf8_lossy(&o.stdout),
            String::from_utf8_lossy(&o.stderr)
        )
    })
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn shape_image(dir: &Path, name: &str, angle: f64) -> PathBuf {
    let shape = &synth::corpus(1, 5, true)[0];
    let path = dir.join(name);
    std::fs::write(&path, shape.render(128, 128, 1.0, angle).unwrap().to_pnm()).unwrap();
    path
}

fn signal_file(dir: &Path) -> PathBuf {
    let geo = GridGeometry::new(16, 8, -1.0, 1.5).unwrap();
    let sig = Signature::Cl11;
    let h = LogPolarSignal::from_fn(geo, sig, |s, t| {
        Multivector::new(sig, [s.cos(), (2.0 * t).sin(), s * t.cos(), 0.25])
    });
    let path = dir.join("h.clms");
    std::fs::write(&path, encode_signal(&h)).unwrap();
    path
}

#[test]
fn transform_then_invert_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let h = signal_file(dir.path());
    let spec = dir.path().join("h.clmf");
    let back = dir.path().join("back.clms");
    let o = run(&[
        "transform",
        p(&h),
        "--f",
        "0,0,1,0",
        "--g",
        "0,0,-1,0",
        "--out",
        p(&spec),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let t = json(&o);
    // e2 is blade-like in Cl(1,1), so both norms agree
    assert_eq!(t["norms_should_agree"], true);
    assert!(t["relative_difference"].as_f64().unwrap() <= 1e-10);
    assert!(t["direct"]["max_abs_diff"].as_f64().unwrap() <= 1e-10);
    assert_eq!(t["config"]["algebra"], "Cl(1,1)");

    let o = run(&["invert", p(&spec), "--reference", p(&h), "--out", p(&back)]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert!(r["round_trip_max_error"].as_f64().unwrap() <= 1e-10);
    assert_eq!(r["within_tolerance"], true);
    assert_eq!(&std::fs::read(&back).unwrap()[..7], b"CLMS v1");
}

#[test]
fn images_transform_with_the_default_pair() {
    let dir = tempfile::tempdir().unwrap();
    let img = shape_image(dir.path(), "a.ppm", 0.0);
    let o = run(&["transform", p(&img), "--ns", "32", "--ntheta", "32"]);
    assert_eq!(code(&o), 0);
    let t = json(&o);
    assert_eq!(t["config"]["f"], serde_json::json!([0.0, 1.0, 0.0, 0.0]));
    assert_eq!(t["config"]["g"], serde_json::json!([0.0, 0.0, 1.0, 0.0]));
    assert!(t["relative_difference"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let h = signal_file(dir.path());

    let o = run(&["--algebra", "Cl(3,0)", "split", "--x", "1,0,0,0"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage:"));
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["split", "--x", "1,2,3"])), 1);
    assert_eq!(code(&run(&["transform", p(&h), "--ns", "8"])), 1);
    let o = bin()
        .env("CLIFFORD_MELLIN_THREADS", "none")
        .args(["manifold"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);

    let junk = dir.path().join("junk.pgm");
    std::fs::write(&junk, b"P5\n8 8\n65535\n").unwrap();
    assert_eq!(code(&run(&["transform", p(&junk)])), 2);
    assert_eq!(code(&run(&["transform", p(&dir.path().join("missing.pgm"))])), 2);
    assert_eq!(code(&run(&["invert", p(&h)])), 2);

    assert_eq!(code(&run(&["split", "--x", "1,2,3,4", "--f", "0,2,0,0"])), 3);
    assert_eq!(code(&run(&["transform", p(&h), "--algebra", "Cl(2,0)"])), 3);
    // descriptors need a blade-like pair
    let img = shape_image(dir.path(), "a.ppm", 0.0);
    let f = "0,1,0,1.4142135623730951";
    assert_eq!(
        code(&run(&[
            "descriptor",
            p(&img),
            "--algebra",
            "Cl(2,0)",
            "--f",
            f,
            "--g",
            f
        ])),
        3
    );
}

#[test]
fn failed_commands_leave_no_output_files() {
    let dir = tempfile::tempdir().unwrap();
    let h = signal_file(dir.path());
    let out = dir.path().join("never.clmf");
    assert_eq!(code(&run(&["transform", p(&h), "--f", "1,0,0,0", "--out", p(&out)])), 3);
    assert!(!out.exists());
    let names: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(names, vec![std::ffi::OsString::from("h.clms")]);
}

#[test]
fn verify_is_deterministic_and_reports_degenerate_skips() {
    let args = [
        "verify",
        "--seed",
        "7",
        "--samples",
        "200",
        "--signals",
        "1",
        "--ns",
        "16",
        "--ntheta",
        "16",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let report = json(&a);
    assert_eq!(report["failed"], 0);
    for c in report["checks"].as_array().unwrap() {
        assert!(c["property"].is_string() && c["algebra"].is_string() && c["pair"].is_string());
        assert!(c.get("residual").is_some() && c.get("pass").is_some());
    }

    let o = run(&[
        "verify",
        "--pair-degenerate",
        "--samples",
        "50",
        "--signals",
        "1",
        "--ns",
        "16",
        "--ntheta",
        "16",
    ]);
    assert_eq!(code(&o), 0);
    let sym: Vec<Value> = json(&o)["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["property"] == "cfmt.symmetry_spans")
        .cloned()
        .collect();
    assert!(!sym.is_empty());
    assert!(sym.iter().all(|c| c["status"] == "skipped (g=±f)"));

    assert_eq!(
        code(&run(&[
            "verify",
            "--tol",
            "1e-300",
            "--samples",
            "10",
            "--signals",
            "1"
        ])),
        3
    );
}

#[test]
fn register_recovers_rotation_and_rejects_blank() {
    let dir = tempfile::tempdir().unwrap();
    let a = shape_image(dir.path(), "a.ppm", 0.0);
    let b = shape_image(dir.path(), "b.ppm", std::f64::consts::FRAC_PI_8);

    let o = run(&["register", p(&a), p(&a)]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["scale"].as_f64().unwrap(), 1.0);
    assert_eq!(r["angle_rad"].as_f64().unwrap(), 0.0);

    let o = run(&["register", p(&a), p(&b)]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    let dtheta = std::f64::consts::TAU / 64.0;
    assert!(
        (r["angle_rad"].as_f64().unwrap() - std::f64::consts::FRAC_PI_8).abs() <= dtheta,
        "{r}"
    );
    assert!(r["confidence"].as_f64().unwrap() >= 1.05);

    let blank = dir.path().join("blank.pgm");
    let mut bytes = b"P5\n128 128\n255\n".to_vec();
    bytes.extend(vec![0u8; 128 * 128]);
    std::fs::write(&blank, bytes).unwrap();
    let o = run(&["register", p(&a), p(&blank)]);
    assert_eq!(code(&o), 4);
    assert!(json(&o)["confidence"].is_number());
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("b1,b2,beta,branch"));
    lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn manifold_exports() {
    let o = run(&["manifold", "--resolution", "12"]);
    assert_eq!(code(&o), 0);
    for r in csv_rows(&String::from_utf8(o.stdout).unwrap()) {
        assert!((r[0] * r[0] + r[1] * r[1] + r[2] * r[2] - 1.0).abs() <= 1e-12);
    }
    let o = run(&["manifold", "--algebra", "Cl(2,0)", "--resolution", "12"]);
    let rows = csv_rows(&String::from_utf8(o.stdout).unwrap());
    for r in &rows {
        assert!((r[2] * r[2] - r[0] * r[0] - r[1] * r[1] - 1.0).abs() <= 1e-12 * r[2] * r[2]);
    }
    assert!(rows.iter().any(|r| r[3] > 0.0) && rows.iter().any(|r| r[3] < 0.0));
    let o = run(&["manifold", "--resolution", "2"]);
    assert_eq!(csv_rows(&String::from_utf8(o.stdout).unwrap()).len(), 4);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.csv");
    let o = run(&["manifold", "--algebra", "Cl(1,1)", "--out", p(&out)]);
    assert!(json(&o)["max_constraint_residual"].as_f64().unwrap() <= 1e-12);
    assert_eq!(csv_rows(&std::fs::read_to_string(out).unwrap()).len(), 32 * 32);
}

#[test]
fn config_echo_round_trips() {
    let o = run(&["split", "--x", "0.1,-2,3e-3,4", "--seed", "3", "--tol", "1e-9"]);
    assert_eq!(code(&o), 0);
    let out = json(&o);
    let config: RunConfig = serde_json::from_value(out["config"].clone()).unwrap();
    assert_eq!(config.seed, 3);
    assert_eq!(config.tolerance, Some(1e-9));
    assert_eq!(RunConfig::from_json(&config.to_json()).unwrap(), config);
    assert!(out["reconstruction_error"].as_f64().unwrap() <= 1e-15);
}

#[test]
fn fast_bench_reports_a_ratio() {
    let o = run(&[
        "fast-bench",
        "--ns",
        "32",
        "--ntheta",
        "32",
        "--bins",
        "16",
        "--repeats",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert!(r["ratio"].as_f64().unwrap() > 0.0);
    assert!(r["max_abs_diff"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn descriptor_csv_covers_every_bin() {
    let dir = tempfile::tempdir().unwrap();
    let h = signal_file(dir.path());
    let o = run(&["descriptor", p(&h), "--f", "0,0,1,0", "--g", "0,0,1,0"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("j,k,v,mag\n"));
    assert_eq!(text.lines().count(), 1 + 16 * 8);
}
