use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use supersat::io::from_graph6;

fn supersat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supersat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.retain(|k, _| k != "elapsed_ms" && k != "wall_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn construct_kneser_as_graph6() {
    let out = supersat(&["construct", "--family", "kneser", "--t", "5", "--format", "g6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let g = from_graph6(text.trim()).unwrap();
    assert_eq!((g.n(), g.edge_count()), (10, 15));
    let spec = supersat(&["construct", "kneser:t=5"]);
    assert_eq!(String::from_utf8(spec.stdout).unwrap(), text);
}

#[test]
fn petersen_formula_report() {
    let out = supersat(&["verify", "petersen-c", "--n", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["reports"][0]["formula_value"], "33600");
    assert_eq!(v["reports"][0]["agreement"], true);
}

#[test]
fn check_critical_from_file_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("petersen.g6");
    let manifest = dir.path().join("run.json");
    let built = supersat(&["construct", "petersen", "--out", g6.to_str().unwrap()]);
    assert_eq!(built.status.code(), Some(0));

    let out = supersat(&[
        "check",
        "critical",
        "--graph",
        g6.to_str().unwrap(),
        "--k",
        "3",
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["is_critical"], true);
    let m: Value = serde_json::from_str(&fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(m["schema"], 1);
    assert_eq!(m["exit_code"], 0);
    assert_eq!(m["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(m["outputs"][0]["path"], "-");

    let wrong = supersat(&[
        "check", "critical", "--graph", "petersen", "--k", "2", "--expect", "true",
    ]);
    assert_eq!(wrong.status.code(), Some(1));
    let bad = supersat(&["check", "critical", "--graph", "no-such-family", "--k", "3"]);
    assert_eq!(bad.status.code(), Some(2));
    let usage = supersat(&["check", "critical", "--k", "3"]);
    assert_eq!(usage.status.code(), Some(2));
    let capped = supersat(&[
        "check",
        "admissible",
        "--graph",
        "petersen",
        "--k",
        "3",
        "--max-types",
        "10",
    ]);
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn reports_do_not_depend_on_threads() {
    let args = [
        "count",
        "--pattern",
        "section3:k=2",
        "--host",
        "h-with-edge:n=12,r=3,k=2,part=1",
        "--classify-by",
        "pieces",
    ];
    let mut one = json(&supersat(&[&args[..], &["--threads", "1"]].concat()));
    let mut many = json(&supersat(&[&args[..], &["--threads", "3"]].concat()));
    strip_timing(&mut one);
    strip_timing(&mut many);
    assert_eq!(one, many);
    assert_eq!(one["copies"], "288");
    assert_eq!(one["classification"].as_object().unwrap().len(), 2);
}

#[test]
fn suite_report_and_csv() {
    let out = supersat(&["suite", "kneser"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
    assert!(String::from_utf8(out.stderr).unwrap().contains("suite kneser: PASS"));
    let unknown = supersat(&["suite", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));

    let csv = supersat(&["verify", "sec3-ci", "--n-range", "13..14", "--csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,k,part,formula,oracle,agreement");
    assert_eq!(lines.len(), 7);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
}

#[test]
fn profile_commands_agree_with_counts() {
    for kind in ["c", "d", "f"] {
        let out = supersat(&[
            "verify",
            "profile",
            "--pattern",
            "2xcomplete:k=3",
            "--k",
            "2",
            "--n",
            "10",
            "--kind",
            kind,
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{kind}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(json(&out)["agreement"], true);
    }
}
