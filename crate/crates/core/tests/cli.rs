use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qudit_walk::limit::konno::konno_mu;
use tempfile::TempDir;

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk")).args(args).output().expect("spawn qwalk")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn col(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

fn out(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn one_step_of_a_spin_half() {
    let dir = TempDir::new().unwrap();
    let p = out(&dir, "sim.csv");
    let o = qwalk(&["simulate", "--j", "1/2", "--beta", "pi/2", "--t", "1", "--out", p.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = read_csv(&p);
    assert_eq!(header, ["x", "p"]);
    let xs: Vec<i64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(xs, [-1, 1]);
    let total: f64 = col(&rows, 1).iter().sum();
    assert!((total - 1.0).abs() < 1e-14);
}

#[test]
fn time_zero_is_the_origin() {
    let dir = TempDir::new().unwrap();
    let p = out(&dir, "sim.csv");
    let o = qwalk(&["simulate", "--j", "3", "--beta", "0.4", "--t", "0", "--out", p.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (_, rows) = read_csv(&p);
    assert_eq!(rows, [vec!["0".to_string(), "1.0".to_string()]]);
}

#[test]
fn bad_flags_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    let p = out(&dir, "x.csv");
    let o = qwalk(&["simulate", "--j", "1/2", "--beta", "half", "--t", "3", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--beta"));

    let o = qwalk(&["simulate", "--j", "1/3", "--beta", "1", "--t", "3", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--j"));

    let o = qwalk(&["simulate", "--beta", "1", "--t", "3", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--j"));

    let o = qwalk(&["teleport"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn broken_qudit_files_are_rejected() {
    let dir = TempDir::new().unwrap();
    let p = out(&dir, "x.csv");
    let zero = out(&dir, "zero.txt");
    std::fs::write(&zero, "0,0\n0,0\n").unwrap();
    let o = qwalk(&["simulate", "--qudit", zero.to_str().unwrap(), "--beta", "1", "--t", "2", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));

    let garbled = out(&dir, "garbled.txt");
    std::fs::write(&garbled, "1,0\nabc\n").unwrap();
    let o = qwalk(&["simulate", "--qudit", garbled.to_str().unwrap(), "--beta", "1", "--t", "2", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains(":2:"));
}

#[test]
fn spin_half_density_is_konno() {
    let dir = TempDir::new().unwrap();
    let p = out(&dir, "nu.csv");
    let up = out(&dir, "q.txt");
    // (1, i)/sqrt 2 keeps the weight equal to one at gamma = 0.
    std::fs::write(&up, "1,0\n0,1\n").unwrap();
    let o = qwalk(&[
        "density", "--qudit", up.to_str().unwrap(), "--beta", "pi/3", "--grid", "-0.95:0.95:39", "--out",
        p.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = read_csv(&p);
    assert_eq!(header, ["v", "nu"]);
    let a = (std::f64::consts::PI / 6.0).cos();
    for (v, nu) in col(&rows, 0).into_iter().zip(col(&rows, 1)) {
        assert!((nu - konno_mu(v, a).unwrap()).abs() < 1e-12, "v = {v}");
    }
}

#[test]
fn degenerate_coins_refuse_to_compare() {
    let dir = TempDir::new().unwrap();
    let p = out(&dir, "cmp.csv");
    let o = qwalk(&["compare", "--j", "1/2", "--beta", "0", "--t", "10", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("degenerate"), "{}", stderr(&o));
    assert!(!p.exists());
}

#[test]
fn curvature_scan_changes_sign() {
    let dir = TempDir::new().unwrap();
    let p = out(&dir, "d2.csv");
    let o = qwalk(&["scan", "d2", "--beta", "pi/2", "--jmax", "9/2", "--out", p.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = read_csv(&p);
    assert_eq!(header, ["j2", "states", "d2"]);
    let d2 = col(&rows, 2);
    assert!(d2[0] > 0.0);
    assert!(*d2.last().unwrap() < 0.0);
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p.with_extension("json")).unwrap()).unwrap();
    assert!(manifest["results"]["j_critical2"].is_i64());
}

#[test]
fn pike_weight_tables() {
    let dir = TempDir::new().unwrap();
    let h = out(&dir, "h.csv");
    let o = qwalk(&["scan", "hfun", "--states", "4,6", "--beta", "pi/2", "--out", h.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = read_csv(&h);
    assert_eq!(header, ["states", "m2", "m", "H"]);
    assert_eq!(rows.len(), 2 + 3);
    assert!(col(&rows, 3).iter().all(|h| *h > 0.0));

    let s = out(&dir, "hs.csv");
    let o = qwalk(&["scan", "hscaled", "--j", "3/2", "--beta", "pi/2", "--out", s.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = read_csv(&s);
    assert_eq!(header, ["states", "m_over_sigma", "sigma_H"]);
    assert_eq!(rows.len(), 2);
}

#[test]
fn rescaled_densities_cover_the_grid() {
    let dir = TempDir::new().unwrap();
    let p = out(&dir, "r.csv");
    let o = qwalk(&[
        "scan", "rescaled", "--states", "2,5", "--beta", "pi/2", "--grid", "-1:1:21", "--out", p.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (_, rows) = read_csv(&p);
    assert_eq!(rows.len(), 42);
    assert!(col(&rows, 2).iter().all(|d| *d >= 0.0));
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p.with_extension("json")).unwrap()).unwrap();
    assert_eq!(manifest["results"]["delta_masses"].as_array().unwrap().len(), 2);
}

#[test]
fn manifests_point_at_their_data_and_reruns_match() {
    let dir = TempDir::new().unwrap();
    let a = out(&dir, "a.csv");
    let b = out(&dir, "b.csv");
    for p in [&a, &b] {
        let o = qwalk(&["moments", "--j", "3/2", "--beta", "pi/2", "--gamma", "pi", "--t", "40", "--out", p.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(a.with_extension("json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "moments");
    assert_eq!(manifest["outputs"][0], a.display().to_string());
    assert_eq!(manifest["parameters"]["t"], 40);
}
