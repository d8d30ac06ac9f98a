use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn trilnd(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_trilnd")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{e}: {}", run.stdout))
}

#[test]
fn analyze_quadric_cone() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"type":2,"blocks":[[2],[2],[2]]}"#);
    let run = trilnd(&["analyze", s(&input), "--format", "json"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run);
    assert_eq!(v["rigid"], false);
    assert_eq!(v["semirigid"]["semirigid"], false);
    assert_eq!(v["factorial"]["value"], false);
    assert_eq!(v["dimension"], 2);
    let text = trilnd(&["analyze", s(&input)]);
    assert!(text.stdout.contains("rigid: false"));
    assert!(text.stdout.contains("deg T0_1 ="));
}

#[test]
fn lnds_quartic_surface() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"type":2,"blocks":[[2],[2],[4]]}"#);
    let run = trilnd(&["lnds", s(&input), "--format", "json"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run);
    assert_eq!(v["class_total"], 2);
    let names: Vec<&str> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["formulas"].as_array().unwrap())
        .map(|f| f["name"].as_str().unwrap())
        .collect();
    assert_eq!(names.len(), 2);
    assert!(names[0].starts_with("case (c)") && names[0].ends_with("μ=i"), "{names:?}");
    assert!(names[1].ends_with("μ=-i"), "{names:?}");
}

#[test]
fn verify_rejects_ill_defined_derivation() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"type":2,"blocks":[[2],[2],[2]]}"#);
    let der = write(&dir, "d.txt", "T0_1 = 1\n");
    let run = trilnd(&["verify", s(&input), s(&der), "--format", "json"]);
    assert_eq!(run.code, 2);
    let v = json(&run);
    assert_eq!(v["well_defined"], false);
    assert_eq!(v["witness"]["image"], "2*T0_1");
}

#[test]
fn verify_accepts_lnd_and_reports_cap_hits() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"type":2,"blocks":[[2],[2],[3]]}"#);
    let der = write(&dir, "d.txt", "T0_1 = 3i*T2_1^2\nT1_1 = 3*T2_1^2\nT2_1 = -2i*T0_1 - 2*T1_1\n");
    let run = trilnd(&["verify", s(&input), s(&der)]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert!(run.stdout.contains("well-defined: true"));
    assert!(run.stdout.contains("homogeneous: true"));
    let capped = trilnd(&["verify", s(&input), s(&der), "--cap", "2"]);
    assert_eq!(capped.code, 3, "{}", capped.stdout);
}

#[test]
fn input_errors_name_the_invariant() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "p.json", r#"{"type":2,"blocks":[[2],[0],[2]]}"#);
    let run = trilnd(&["analyze", s(&bad)]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("not positive"), "{}", run.stderr);
    let dup = write(&dir, "q.json", r#"{"type":1,"blocks":[[1],[2]],"constants":["1","1"]}"#);
    assert!(trilnd(&["lnds", s(&dup)]).stderr.contains("pairwise distinct"));
    assert_eq!(trilnd(&["frobnicate"]).code, 1);
    assert_eq!(trilnd(&["analyze", s(&bad), "--cap", "0"]).code, 1);
}

#[test]
fn json_reports_are_deterministic_and_formulas_round_trip() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"type":2,"blocks":[[1,2],[2],[2],[3]]}"#);
    let a = trilnd(&["lnds", s(&input), "--format", "json"]);
    let b = trilnd(&["lnds", s(&input), "--format", "json", "--sequential"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let mut checked = 0;
    for class in v["classes"].as_array().unwrap() {
        for f in class["formulas"].as_array().unwrap() {
            let body: String = f["images"]
                .as_object()
                .unwrap()
                .iter()
                .map(|(g, img)| format!("{g} = {}\n", img.as_str().unwrap()))
                .collect();
            let der = write(&dir, &format!("d{checked}.txt"), &body);
            let run = trilnd(&["verify", s(&input), s(&der)]);
            assert_eq!(run.code, 0, "{}: {}", f["name"], run.stdout);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn kernel_lists_generators() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"type":1,"blocks":[[3],[1,2]]}"#);
    let run = trilnd(&["kernel", s(&input)]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("k[T2_2]"), "{}", run.stdout);
}

#[test]
fn oracle_reports_witnesses() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p.json", r#"{"type":2,"blocks":[[2],[2],[2]]}"#);
    let run = trilnd(&["oracle", s(&input), "--degree-bound", "1", "--weight", "0", "--format", "json"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run);
    assert_eq!(v["nilpotent_found"], true);
    assert_eq!(v["solutions"][0]["dimension"], 4);
    let wrong = trilnd(&["oracle", s(&input), "--weight", "0,1"]);
    assert_eq!(wrong.code, 1);
}

#[test]
fn demazure_families() {
    let run = trilnd(&["demazure", "--rays", "0,1:4,-1", "--ray", "2", "--materialize", "2", "--format", "json"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run);
    assert_eq!(v["roots"], "{(4p-1, -p) : p >= 1}");
    assert_eq!(v["materialized"][0]["root"], serde_json::json!([7, -2]));
    assert_eq!(v["materialized"][0]["uvz"], "u ↦ 0, v ↦ 4*u*z^3, z ↦ u^2");
    let generic = trilnd(&["demazure", "--rays", "1,0:1,2", "--ray", "1"]);
    assert_eq!(generic.code, 0);
    assert!(generic.stdout.contains("roots:"));
    assert_eq!(trilnd(&["demazure", "--rays", "1,0:2,0", "--ray", "1"]).code, 1);
}

#[test]
fn normalize_reports_scalings_or_obstruction() {
    let dir = TempDir::new().unwrap();
    let good = write(
        &dir,
        "a.json",
        r#"{"type":2,"blocks":[[2],[2],[3]],"constants":[["1","0"],["0","1"],["-1","-4"]]}"#,
    );
    let run = trilnd(&["normalize", s(&good), "--format", "json"]);
    assert_eq!(run.code, 0);
    let v = json(&run);
    assert_eq!(v["normalizable"], true);
    assert_eq!(v["relation"], "T2_1^3 + T1_1^2 + T0_1^2");
    let bad = write(
        &dir,
        "b.json",
        r#"{"type":2,"blocks":[[2],[2],[3]],"constants":[["1","0"],["0","1"],["-1","-2"]]}"#,
    );
    let run = trilnd(&["normalize", s(&bad)]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("not normalizable"), "{}", run.stdout);
}
