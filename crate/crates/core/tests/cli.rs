use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hjelmslev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hjelmslev"))
        .args(args)
        .env_remove("HJELMSLEV_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(bytes: &[u8]) -> serde_json::Value {
    serde_json::from_slice(bytes).expect("valid JSON")
}

#[test]
fn plane_json() {
    let out = hjelmslev(&["plane", "--p", "2", "--r", "1", "--kind", "galois", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["schema"], "hjelmslev.plane");
    assert_eq!(v["version"], 1);
    assert_eq!(v["points"].as_array().unwrap().len(), 28);
}

#[test]
fn dot_has_seven_clusters() {
    let out = hjelmslev(&["plane", "--p", "2", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("subgraph cluster_").count(), 7);
}

#[test]
fn dual_arc_summary() {
    let out = hjelmslev(&["arc", "--p", "2", "--r", "1", "--kind", "dual", "--target", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no 7-arc, exhausted"));
    let v = json(&out.stdout);
    assert_eq!(v["exhausted"], true);
    let out = hjelmslev(&["arc", "--p", "2", "--target", "7"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("found a 7-arc"));
}

#[test]
fn correspond_pipeline() {
    let out = hjelmslev(&["correspond", "--p", "3", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["schema"], "hjelmslev.correspondence");
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 5);
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn mub_deviation_matrix() {
    let out = hjelmslev(&["mub", "--p", "2", "--r", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().all(|l| l.split(',').count() == 5));
}

#[test]
fn exit_codes() {
    let out = hjelmslev(&["plane", "--p", "2", "--kind", "quaternion"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hjelmslev(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hjelmslev(&["export", "--p", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = hjelmslev(&["ring", "--p", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out.stderr);
    assert_eq!(report["schema"], "hjelmslev.error");
    assert_eq!(report["module"], "galois-rings");
    assert_eq!(report["operation"], "make_ring");

    let out = hjelmslev(&["plane", "--p", "7", "--r", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn export_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [a.path(), b.path()] {
        let out = Command::new(env!("CARGO_BIN_EXE_hjelmslev"))
            .args(["export", "--p", "2"])
            .env("HJELMSLEV_OUT_DIR", dir)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let fa = read_dir_sorted(a.path());
    let fb = read_dir_sorted(b.path());
    let names: Vec<&str> = fa.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(
        names,
        [
            "conic_gr_p2_r1.json",
            "conic_intersections_gr_p2_r1.json",
            "plane_gr_p2_r1.csv",
            "plane_gr_p2_r1.dot",
            "plane_gr_p2_r1.json",
            "ring_gr_p2_r1.json",
        ]
    );
    assert_eq!(fa, fb);
    for (name, bytes) in &fa {
        if name.ends_with(".json") {
            let v = json(bytes);
            assert_eq!(v["version"], 1, "{name}");
            assert!(v["schema"].as_str().unwrap().starts_with("hjelmslev."), "{name}");
        }
    }
}
