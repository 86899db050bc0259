use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn domekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domekit")).args(args).env_remove("DOMEKIT_THREADS").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = domekit(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid json");
    assert_eq!(v["schema"], "domekit/1");
    v
}

fn csv_rows(args: &[&str]) -> Vec<Vec<String>> {
    let out = domekit(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut r = csv::Reader::from_reader(&out.stdout[..]);
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    let mut rows = vec![header];
    rows.extend(r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()));
    rows
}

struct Files(tempfile::TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, body: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    }
}

const TETRA: &str = r#"{"points": [[0.36602540378443865, 0.36602540378443865], [1.3660254037844384, -1.3660254037844384], [-1.3660254037844384, 1.3660254037844384], [-0.36602540378443865, -0.36602540378443865]]}"#;

#[test]
fn bounds_eval_at_the_domain_edge() {
    let v = json(&["bounds", "eval", "--nu", "0.5", "--format", "json"]);
    assert!(v["lower_bound_k"].is_null());
    assert!(v["lower_bound_k_reason"].as_str().unwrap().contains("0.5"));
    assert!(v["m"]["value"].as_f64().unwrap() > 0.0);
    assert!(v["lipschitz"].as_f64().unwrap() > 0.0);
    let v = json(&["bounds", "eval", "--nu", "0.25", "--nu-hat", "0.05"]);
    assert!(v["lower_bound_k"].as_f64().unwrap() > 0.0);
    assert!(v["lower_bound_k_reason"].is_null());
    assert_eq!(v["all_hold"], true);
}

#[test]
fn bounds_table_rows() {
    let rows = csv_rows(&["bounds", "table", "--nu-min", "0.01", "--nu-max", "2", "--points", "7", "--log", "--format", "csv"]);
    assert_eq!(rows.len(), 8);
    assert!(rows[1..].iter().all(|r| r.last().unwrap() == "true"));
    let x: f64 = rows[7][0].parse().unwrap();
    assert!((x - 2.0).abs() < 1e-12);
}

#[test]
fn annulus_table_shape() {
    let rows = csv_rows(&["annulus", "table", "--s-min", "1", "--s-max", "10", "--points", "10", "--format", "csv"]);
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r.len() == 14));
    assert_eq!(&rows[0][11..], ["k_le_m", "k_le_n", "lower_le_k"]);
    // Seventeen significant digits.
    assert_eq!(rows[1][0], "1.0000000000000000e0");
    let v = json(&["annulus", "table", "--s-min", "0.1", "--s-max", "60", "--points", "40"]);
    assert_eq!(v["all_hold"], true);
}

#[test]
fn dome_commands() {
    let f = Files::new();
    let square = f.write("square.json", r#"{"points": [[0, 0], [1, 0], "inf", [-1, 0]]}"#);
    let v = json(&["dome", "build", "--input", &square]);
    assert_eq!(v["doubled"], true);
    assert_eq!(v["faces"].as_array().unwrap().len(), 2);

    let tetra = f.write("tetra.json", TETRA);
    let obj = f.0.path().join("tetra.obj");
    let v = json(&["dome", "build", "--input", &tetra, "--obj", obj.to_str().unwrap(), "--level", "1"]);
    assert_eq!(v["doubled"], false);
    let w: Vec<f64> = v["bending_lamination"].as_array().unwrap().iter().map(|l| l["weight"].as_f64().unwrap()).collect();
    assert_eq!(w.len(), 6);
    assert!(w.iter().all(|x| (x - w[0]).abs() < 1e-9));
    assert!(std::fs::read_to_string(&obj).unwrap().lines().filter(|l| l.starts_with("f ")).count() == 16);

    let rows = csv_rows(&["dome", "retract", "--input", &tetra, "--z", "0.1,-0.2", "--z", "inf", "--format", "csv"]);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2][0], "inf");

    let v = json(&["dome", "inj-radius", "--input", &tetra, "--z", "0.2,0.1", "--depth", "20"]);
    let e = &v["results"][0]["estimate"];
    assert_eq!(e["exact"], true);
    assert!(e["radius"].as_f64().unwrap() > 0.0);
}

#[test]
fn exit_codes() {
    let out = domekit(&["bounds", "eval", "--nu", "0.3", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--frobnicate"));
    let out = domekit(&["bounds", "eval", "--nu", "0.3", "--format", "xml"]);
    assert_eq!(out.status.code(), Some(2));
    let out = domekit(&["qc", "estimate", "--fixture", "nonsense", "--grid", "16"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--fixture"));

    let out = domekit(&["bounds", "eval", "--nu=-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("BoundsError"));
    let f = Files::new();
    let tetra = f.write("tetra.json", TETRA);
    let out = domekit(&["dome", "retract", "--input", &tetra, "--z", "0.36602540378443865,0.36602540378443865"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("DomeError::PointNotInDomain"));
    let two = f.write("two.json", r#"{"points": [[0, 0], [1, 0]]}"#);
    let out = domekit(&["dome", "build", "--input", &two]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("TooFewPoints"));
    let crossing = f.write("crossing.json", r#"{"leaves": [[0, 3], [1.5, 4.5]], "weights": [1, 1]}"#);
    let out = domekit(&["lamination", "validate", "--input", &crossing]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("LaminationError::CrossingLeaves"));
}

#[test]
fn laminations_and_earthquakes() {
    let f = Files::new();
    let lam = f.write("lam.json", r#"{"leaves": [[0.1, 2.0], [2.5, 4.0], [4.2, 6.0]], "weights": [0.7, 0.4, 1.1]}"#);
    let v = json(&["lamination", "validate", "--input", &lam]);
    assert_eq!(v["valid"], true);
    let v = json(&["lamination", "roundness", "--input", &lam, "--samples", "20000", "--seed", "7"]);
    assert_eq!(v["sampled"]["within_exact"], true);
    let rows = csv_rows(&["earthquake", "trace", "--input", &lam, "--z", "0.3,-0.2", "--points", "90", "--format", "csv"]);
    assert_eq!(rows.len(), 91);
    assert_eq!(rows[0], ["angle", "re", "im"]);
    let v = json(&["earthquake", "trace", "--input", &lam, "--z", "0.3,0.2", "--points", "12"]);
    assert_eq!(v["trace"].as_array().unwrap().len(), 12);
    assert!(v["faces"].is_array() || v["faces"].is_object());
}

#[test]
fn crescents_and_qc() {
    let v = json(&["crescent", "dilatation", "--w", "0,1", "--theta", "1.5707963267948966", "--grid", "128"]);
    let k = v["dilatation"].as_f64().unwrap();
    assert!((v["estimate"]["stats"]["sup"].as_f64().unwrap() - k).abs() < 1e-3);
    let out = domekit(&["crescent", "dilatation", "--w", "0,5", "--theta", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("CrescentError::NotInjective"));

    let v = json(&["qc", "estimate", "--fixture", "affine", "--grid", "64"]);
    assert!((v["stats"]["sup"].as_f64().unwrap() - 2.0).abs() < 1e-10);
    let rows = csv_rows(&["qc", "estimate", "--fixture", "mobius", "--grid", "32", "--format", "csv"]);
    assert_eq!(rows[0], ["x", "y", "mu_re", "mu_im", "k"]);
    assert_eq!(rows.len(), 1 + 30 * 30);
}

#[test]
fn output_is_deterministic() {
    let f = Files::new();
    let lam = f.write("lam.json", r#"{"leaves": [[0.1, 2.0], [2.5, 4.0]], "weights": [0.7, 0.4]}"#);
    let args = ["lamination", "roundness", "--input", &lam, "--samples", "50000", "--seed", "3"];
    let one = domekit(&[&args[..], &["--threads", "1"]].concat()).stdout;
    let four = domekit(&[&args[..], &["--threads", "4"]].concat()).stdout;
    assert_eq!(one, four);
    let env = Command::new(env!("CARGO_BIN_EXE_domekit")).args(args).env("DOMEKIT_THREADS", "2").output().unwrap();
    assert!(env.status.success());
    assert_eq!(env.stdout, one);
    let other_seed = domekit(&["lamination", "roundness", "--input", &lam, "--samples", "50000", "--seed", "4"]).stdout;
    assert_ne!(other_seed, one);
    let a = domekit(&["annulus", "table", "--s-min", "1", "--s-max", "50", "--points", "200", "--format", "csv", "--threads", "1"]);
    let b = domekit(&["annulus", "table", "--s-min", "1", "--s-max", "50", "--points", "200", "--format", "csv", "--threads", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_round_trips() {
    let f = Files::new();
    let tetra = f.write("tetra.json", TETRA);
    // The configuration written back by dome build parses as input again.
    let v = json(&["dome", "build", "--input", &tetra]);
    let again = f.write("again.json", &serde_json::json!({ "points": v["points"] }).to_string());
    let w = json(&["dome", "build", "--input", &again]);
    assert_eq!(v, w);
    for args in [
        &["bounds", "eval", "--nu-hat", "0.3"][..],
        &["annulus", "table", "--s-min", "1", "--s-max", "2", "--points", "2"],
        &["qc", "estimate", "--fixture", "identity", "--grid", "16"],
    ] {
        let v = json(args);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);
    }
}
