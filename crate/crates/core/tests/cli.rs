use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn bgit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bgit")).args(args).env_remove("BGIT_REPORT_DIR").output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn farey_commands() {
    assert_eq!(json(&bgit(&["farey", "distance", "0/1", "inf"]))["distance"], 1);
    assert_eq!(json(&bgit(&["farey", "distance", "1/2", "-1/2"]))["distance"], 2);
    let g = json(&bgit(&["farey", "geodesics", "0/1", "2/1"]));
    assert_eq!(g["geodesics"].as_array().unwrap().len(), 2);
    assert!(json(&bgit(&["farey", "dv", "0/1", "1/5", "-1/5"]))["dv"].as_i64().unwrap() >= 5);
    assert!(!bgit(&["farey", "distance", "0/0", "1/1"]).status.success());
    assert_eq!(json(&bgit(&["farey", "distance", "2/4", "1/2"]))["distance"], 0);
}

#[test]
fn farey_sweep_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("sweep.json");
    let out = bgit(&["farey", "sweep", "--max-denominator", "6", "--report", report.to_str().unwrap()]);
    assert!(out.status.success());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["violations"].as_array().unwrap().len(), 0);
    assert!(r.get("wall_time_ms").is_none());
    assert!(bgit(&["farey", "dump", "--max-denominator", "3", "--out", dir.path().to_str().unwrap()]).status.success());
    let v = std::fs::read_to_string(dir.path().join("farey_vertices.csv")).unwrap();
    assert!(v.starts_with("slope,p,q,x,y\n") && v.contains("inf,"));
}

#[test]
fn bicorn_commands() {
    let torus = fixture("torus_square.diag");
    let t = torus.to_str().unwrap();
    assert_eq!(json(&bgit(&["bicorn", "enumerate", t]))["count"], 2);
    let p = json(&bgit(&["bicorn", "path", fixture("extension.diag").to_str().unwrap(), "--strategy", "0:-:+"]));
    assert_eq!(p["strategy"], "0:-:+");
    assert!(p["violations"].as_array().unwrap().is_empty());
    assert!(!bgit(&["bicorn", "path", t, "--strategy", "0:?:+"]).status.success());
    let slim = json(&bgit(&["bicorn", "slim", fixture("slim_surgery.diag").to_str().unwrap()]));
    assert!(!slim["outcomes"].as_array().unwrap().is_empty());
    let l = json(&bgit(&["bicorn", "lemma18", fixture("surgery_pair.diag").to_str().unwrap()]));
    assert_eq!(l["status"], "found");
    assert_eq!(json(&bgit(&["bicorn", "bound"]))["bound"], 44);
    assert_eq!(json(&bgit(&["bicorn", "bound", "--hausdorff", "0", "--filling", "4"]))["bound"], 16);
}

#[test]
fn wiggled_input_is_refused() {
    let out = bgit(&["bicorn", "enumerate", fixture("wiggled.diag").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bigon"));
}

#[test]
fn project_commands() {
    let f = fixture("one_holed_torus.diag");
    let f = f.to_str().unwrap();
    // corner 0 of crossing 0 lies on one side of C
    let a = json(&bgit(&["project", "arcs", f, "--subsurface", "f0.0", "--curve", "A"]));
    assert_eq!(a["subsurface"]["genus"], 1);
    assert_eq!(a["projection"]["kind"], "arcs");
    let p = json(&bgit(&["project", "pi0", f, "--subsurface", "f0.0", "--curve", "A", "--arc", "0"]));
    assert!(!p["pi0"].as_array().unwrap().is_empty());
    let l = json(&bgit(&["project", "lipschitz", f, "--subsurface", "f0.0", "--curves", "A", "B"]));
    assert!(l["pi0_chains"].as_array().unwrap().iter().all(|c| c["length"].as_u64().unwrap() <= 2));
    assert!(!bgit(&["project", "pi0", f, "--subsurface", "f0.0", "--curve", "A", "--arc", "99"]).status.success());
}

#[test]
fn verify_writes_reports_and_fails_unknown_suites() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = bgit(&["verify", "ledger", "--report-dir", d]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS ledger"));
    assert!(dir.path().join("ledger.json").exists() && dir.path().join("ledger.csv").exists());
    assert_eq!(bgit(&["verify", "nonsense", "--report-dir", d]).status.code(), Some(2));

    let env_dir = dir.path().join("from_env");
    let out = Command::new(env!("CARGO_BIN_EXE_bgit"))
        .args(["verify", "ledger"])
        .env("BGIT_REPORT_DIR", &env_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(env_dir.join("ledger.json").exists());
}

#[test]
fn verify_is_byte_stable_for_a_seed() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let small = ["--fuzz-count", "60", "--triple-count", "10", "--max-per-pair", "4", "--host-count", "10"];
    for dir in [&a, &b] {
        let mut args = vec!["verify", "bicorn-paths", "--seed", "9", "--report-dir", dir.path().to_str().unwrap()];
        args.extend(small);
        assert!(bgit(&args).status.success());
    }
    for f in ["bicorn-paths.json", "bicorn-paths.csv"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap());
    }
}
