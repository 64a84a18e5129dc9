use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn orrsom(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orrsom"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("run orrsom")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> (String, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn kept(spectrum: &Value) -> Vec<(f64, f64)> {
    spectrum["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["kept"].as_bool().unwrap())
        .map(|e| (e["re"].as_f64().unwrap(), e["im"].as_f64().unwrap()))
        .collect()
}

#[test]
fn blasius_profile_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let out = orrsom(&["profile", "--xmax", "10"], dir.path());
    assert!(out.status.success());
    let (header, rows) = csv_rows(&dir.path().join("profile.csv"));
    assert_eq!(header, "x,V,dV,d2V");
    assert_eq!(rows.first().unwrap()[..2], [0.0, 0.0]);
    let b = json(&dir.path().join("bounds.json"));
    assert_eq!(b["schema"], 1);
    assert_eq!(b["v_max"], 1.0);
    assert_eq!(b["d2v_max"], 0.0);
    assert_eq!(b["config"]["profile"], "blasius");
}

#[test]
fn constant_profile_has_zero_derivatives() {
    let dir = tempfile::tempdir().unwrap();
    assert!(orrsom(&["profile", "--profile", "constant:1"], dir.path()).status.success());
    let (_, rows) = csv_rows(&dir.path().join("profile.csv"));
    assert!(rows.iter().all(|r| r[1] == 1.0 && r[2] == 0.0 && r[3] == 0.0));
}

#[test]
fn tabulated_profile_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let second = dir.path().join("second");
    assert!(orrsom(&["profile", "--xmax", "20"], &first).status.success());
    let table = format!("file:{}", first.join("profile.csv").display());
    assert!(orrsom(&["profile", "--xmax", "20", "--profile", &table], &second).status.success());
    let (_, a) = csv_rows(&first.join("profile.csv"));
    let (_, b) = csv_rows(&second.join("profile.csv"));
    assert_eq!(a, b);
}

#[test]
fn constant_spectrum_lies_on_the_ray() {
    let dir = tempfile::tempdir().unwrap();
    let out = orrsom(&["spectrum", "--profile", "constant:1", "--format", "csv"], dir.path());
    assert!(out.status.success());
    let s = json(&dir.path().join("spectrum.json"));
    for key in ["schema", "a", "R", "N", "X_max", "eigenvalues"] {
        assert!(s.get(key).is_some(), "missing {key}");
    }
    let kept = kept(&s);
    assert!(!kept.is_empty());
    assert!(kept.iter().all(|&(re, im)| (im - 103.82).abs() <= 1.0382 && re >= 0.032041 - 1e-6));
    let head = fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert!(head.starts_with("re,im,residual,kept,drift\n"));
}

#[test]
fn coarse_grid_warns_but_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = orrsom(&["spectrum", "--profile", "constant:1", "--N", "8", "--export-pencil"], dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("coarse"));
    let a = fs::read_to_string(dir.path().join("pencil_A.txt")).unwrap();
    assert!(a.starts_with("%%OrrSommerfeld matrix complex general row-major\n8 8\n"));
}

#[test]
fn blasius_verifies_against_thm33() {
    let dir = tempfile::tempdir().unwrap();
    let out = orrsom(&["verify", "--variant", "thm33"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&dir.path().join("verify.json"));
    assert_eq!(v["all_inside"], true);
    assert!(v["kept"].as_u64().unwrap() > 0);
}

#[test]
fn injected_eigenvalue_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    assert!(orrsom(&["spectrum", "--N", "64"], dir.path()).status.success());
    let path = dir.path().join("spectrum.json");
    let mut s = json(&path);
    s["eigenvalues"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!({"re": 1.0, "im": 300.0, "residual": 0.0, "kept": true, "drift": 0.0}));
    let fake = dir.path().join("fake.json");
    fs::write(&fake, serde_json::to_string(&s).unwrap()).unwrap();
    let out = orrsom(&["verify", "--spectrum-file", fake.to_str().unwrap()], &dir.path().join("v"));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&dir.path().join("v/verify.json"))["all_inside"], false);
}

#[test]
fn constant_profile_verifies_against_thm31() {
    let dir = tempfile::tempdir().unwrap();
    let out = orrsom(&["verify", "--profile", "constant:1", "--variant", "thm31"], dir.path());
    assert!(out.status.success());
}

#[test]
fn enclosure_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = orrsom(&["enclosure", "--variant", "thm31,thm33,cor32-box,cor32-box-improved"], dir.path());
    assert!(out.status.success());
    let b = json(&dir.path().join("box.json"));
    let improved = b["boxes"].as_array().unwrap().iter().find(|e| e["variant"] == "cor32-box-improved").unwrap();
    assert!((improved["im_max"].as_f64().unwrap() - 103.82).abs() < 1e-9);
    for v in ["thm31", "thm33", "cor32-box", "cor32-box-improved"] {
        let (header, rows) = csv_rows(&dir.path().join(format!("region_{v}.csv")));
        assert_eq!(header, "re,im");
        assert!(rows.len() >= 4);
    }
    let (_, ray) = csv_rows(&dir.path().join("ray.csv"));
    assert!((ray[0][0] - 0.032041).abs() < 1e-12 && (ray[0][1] - 103.82).abs() < 1e-12);
}

#[test]
fn constant_region_is_the_strip() {
    let dir = tempfile::tempdir().unwrap();
    assert!(orrsom(&["enclosure", "--profile", "constant:1", "--variant", "thm31"], dir.path()).status.success());
    let (_, rows) = csv_rows(&dir.path().join("region_thm31.csv"));
    assert!(rows.iter().all(|r| (r[1] - 103.82).abs() < 1e-12 && r[0] >= 0.032041 - 1e-15));
}

#[test]
fn thm33_needs_concavity() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("convex.csv");
    fs::write(&table, "x,V,dV,d2V\n0,0,0,0.2\n1,0.1,0.2,0.2\n2,0.4,0.4,0.2\n").unwrap();
    fs::write(dir.path().join("convex.json"), "{\"c\": 0.4}").unwrap();
    let profile = format!("file:{}", table.display());
    let out = orrsom(&["enclosure", "--profile", &profile, "--variant", "thm33"], &dir.path().join("o"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("V''"), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn sweep_records_every_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = orrsom(&["sweep", "--N", "48", "--a-list", "0.179,0.3", "--R-list", "300,580", "--jobs", "2"], dir.path());
    assert!(out.status.success());
    let points = json(&dir.path().join("sweep.json"))["points"].as_array().unwrap().clone();
    assert_eq!(points.len(), 4);
    let order: Vec<(f64, f64)> = points.iter().map(|p| (p["a"].as_f64().unwrap(), p["R"].as_f64().unwrap())).collect();
    assert_eq!(order, [(0.179, 300.0), (0.179, 580.0), (0.3, 300.0), (0.3, 580.0)]);
    for p in &points {
        assert!(p["beta3_probe"].as_f64().unwrap() <= p["beta3_bound"].as_f64().unwrap() + 1e-8);
    }
}

#[test]
fn sweep_failures_are_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let out = orrsom(&["sweep", "--N", "32", "--a-list", "0.2,-1", "--R-list", "100"], dir.path());
    assert!(out.status.success());
    let points = json(&dir.path().join("sweep.json"))["points"].as_array().unwrap().clone();
    assert!(points[0]["error"].is_null());
    assert!(points[1]["error"].as_str().unwrap().contains("positive"));
}

#[test]
fn small_wave_number_grows_the_beta3_bound() {
    let dir = tempfile::tempdir().unwrap();
    assert!(orrsom(&["sweep", "--N", "32", "--a-list", "0.01,0.1", "--R-list", "100"], dir.path()).status.success());
    let points = json(&dir.path().join("sweep.json"))["points"].as_array().unwrap().clone();
    let bound = |k: usize| points[k]["beta3_bound"].as_f64().unwrap();
    assert!((bound(0) / bound(1) - 10.0).abs() < 1e-9);
    assert!(points.iter().all(|p| p["beta3_probe"].as_f64().unwrap() <= p["beta3_bound"].as_f64().unwrap() + 1e-8));
}

#[test]
fn one_point_sweep_matches_verify() {
    let dir = tempfile::tempdir().unwrap();
    assert!(orrsom(&["sweep", "--N", "64", "--a-list", "0.179", "--R-list", "580"], &dir.path().join("s")).status.success());
    assert!(orrsom(&["verify", "--N", "64"], &dir.path().join("v")).status.success());
    let p = &json(&dir.path().join("s/sweep.json"))["points"][0];
    let v = json(&dir.path().join("v/verify.json"));
    assert_eq!(p["kept"], v["kept"]);
    assert_eq!(p["all_inside"], v["all_inside"]);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for run in ["one", "two"] {
        assert!(orrsom(&["verify", "--N", "64"], &dir.path().join(run)).status.success());
    }
    for file in ["verify.json", "config.json"] {
        assert_eq!(fs::read(dir.path().join("one").join(file)).unwrap(), fs::read(dir.path().join("two").join(file)).unwrap());
    }
}
