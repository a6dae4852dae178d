use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn flagmono(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagmono"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

const U34: &str = "n=4 r=3\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n";
const PAR34: &str = "n=4 r=3\n1 2 3\n1 2 4\n";

#[test]
fn hvector_flag_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let u = write(dir.path(), "u34.txt", U34);
    let out = flagmono(&["hvector", &u]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let h: Vec<(Value, i64)> = v["h"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["S"].clone(), e["value"].as_i64().unwrap()))
        .collect();
    assert_eq!(
        h,
        vec![
            (serde_json::json!([]), 1),
            (serde_json::json!([1]), 3),
            (serde_json::json!([2]), 5),
            (serde_json::json!([1, 2]), 3)
        ]
    );
    let out = flagmono(&["hvector", &u, "--flag", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "S,value\n0,1\n1,3\n2,5\n3,3\n");
}

#[test]
fn hvector_other_modes() {
    let dir = tempfile::tempdir().unwrap();
    let u = write(dir.path(), "u34.json", r#"{"n":4,"bases":[[1,2,3],[1,2,4],[1,3,4],[2,3,4]]}"#);
    let v = stdout_json(&flagmono(&["hvector", &u, "--coarse"]));
    assert_eq!(v["f"], serde_json::json!([1, 10, 12]));
    assert_eq!(v["h"], serde_json::json!([1, 8, 3]));

    let u23 = write(dir.path(), "u23.txt", "n=3 r=2\n1 2\n1 3\n2 3\n");
    let v = stdout_json(&flagmono(&["hvector", &u23, "--independence"]));
    assert_eq!(v["f"], serde_json::json!([1, 3, 3]));
    assert_eq!(v["h"], serde_json::json!([1, 1, 1]));

    let v = stdout_json(&flagmono(&["hvector", &u, "--sr"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["agrees"] == Value::Bool(true)));
    assert_eq!(rows[3]["relation_rank"], 9);

    let out = flagmono(&["hvector", &u, "--sr", "--coarse"]);
    assert!(!out.status.success());
}

#[test]
fn check_pair_reports_maps() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", U34);
    let b = write(dir.path(), "b.txt", PAR34);
    let out = flagmono(&["check-pair", &a, &b]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["weak"], true);
    assert_eq!(v["strong"], false);
    assert_eq!(v["rank_preserving"], true);
    assert_eq!(v["flag_h_monotone"], true);
    assert_eq!(v["details"]["duality_ok"], true);

    let v = stdout_json(&flagmono(&["check-pair", &b, &a]));
    assert_eq!(v["weak"], false);
    assert_eq!(v["details"]["weak_violation"], serde_json::json!([1, 3, 4]));

    let t = write(dir.path(), "t.txt", "n=4 r=2\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    let v = stdout_json(&flagmono(&["check-pair", &a, &t]));
    assert_eq!(v["strong"], true);
    assert_eq!(v["rank_preserving"], false);
    assert_eq!(v["flag_h_monotone"], Value::Null);
}

#[test]
fn enumerate_to_stdout_and_directory() {
    let out = flagmono(&["enumerate", "--n", "3", "--r", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert_eq!(text.lines().next().unwrap(), r#"{"n":3,"bases":[[1,2],[1,3],[2,3]]}"#);

    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("cat");
    let out = flagmono(&["enumerate", "--n", "4", "--r", "2", "--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    let files: Vec<_> = fs::read_dir(&target).unwrap().collect();
    assert_eq!(files.len(), 36);
    let first = fs::read_to_string(target.join("n4r2-00000.txt")).unwrap();
    assert!(first.starts_with("n=4 r=2\n"));
}

#[test]
fn enumeration_cap_is_configurable() {
    let out = Command::new(env!("CARGO_BIN_EXE_flagmono"))
        .args(["enumerate", "--n", "3", "--r", "1"])
        .env("FLAGMONO_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn suite_json_and_csv() {
    let out = flagmono(&["suite", "--n-max", "4", "--seed", "3", "--relabelings", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["catalog_size"], 92);
    assert_eq!(v["seed"], 3);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 11);
    for c in checks {
        assert_eq!(c["failed"], 0, "{c}");
        assert_eq!(c["passed"], c["scheduled"]);
    }

    let out = flagmono(&[
        "suite", "--n-max", "3", "--checks", "flag-mono,uniform-max", "--format", "csv", "--jobs", "1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "check,scheduled,passed,failed,first_failure");
    assert!(lines[1].starts_with("flag-mono,"));
    assert!(lines[2].starts_with("uniform-max,24,24,0,"));
}

#[test]
fn suite_with_random_supplement_is_reproducible() {
    let run = || {
        let out = flagmono(&[
            "suite", "--n-max", "2", "--random-linear", "3", "--random-n-max", "7", "--seed", "9",
            "--relabelings", "2", "--checks", "h-routes,relabel,uniform-max,flag-mono",
        ]);
        assert!(out.status.success());
        let mut v = stdout_json(&out);
        v["elapsed_ms"] = Value::Null;
        v
    };
    let first = run();
    assert_eq!(first["catalog_size"], 8 + 6);
    assert_eq!(first, run());
}

#[test]
fn bad_input_exits_with_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "n=4 r=2\n1 2\n3 4\n");
    let out = flagmono(&["hvector", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a matroid"));
}
