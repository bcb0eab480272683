use std::process::{Command, Output};

use regmaps::group_maps::hopf_input;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regmaps")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["degree", "phi:2", "--samples", "2000", "--seed", "5"][..],
        &["verify", "s:3", "--trials", "5", "--samples", "200", "--seed", "3"][..],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn spec_examples() {
    let v = run(&["verify", "oplus:1", "--trials", "20", "--seed", "7"]);
    assert_eq!(v.status.code(), Some(0));
    let reports = json(&v)["reports"].as_array().unwrap().clone();
    assert!(reports.iter().any(|r| r["check"] == "oplus sum-norm identity" && r["passed"] == true));

    let d = run(&["degree", "phi:1"]);
    assert_eq!(d.status.code(), Some(0));
    assert_eq!(json(&d)["rounded"], 2);

    let r = run(&["rh", "2"]);
    assert_eq!(json(&r)["a_p"], 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "jmap-rotation", "--trials", "5", "--samples", "100"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "no-such-map"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "oplus:1", "--point", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["rh", "1", "7"]).status.code(), Some(0));
}

#[test]
fn degree_reports_seed_and_samples() {
    let d = run(&["degree", "antipodal:2", "--samples", "3000", "--seed", "11"]);
    assert_eq!(d.status.code(), Some(0));
    let v = json(&d);
    assert_eq!(v["seed"], 11);
    assert_eq!(v["samples"], 3000);
    assert_eq!(v["rounded"], -1);
}

#[test]
fn map_files_round_trip_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("zpow.json");
    let b = run(&["build", "zpow:3", "--out", map.to_str().unwrap()]);
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(std::fs::read(&map).unwrap(), b.stdout);

    let d = run(&["degree", map.to_str().unwrap()]);
    assert_eq!(json(&d)["rounded"], 3);

    let c = run(&["compose", "zpow:2", map.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
    let composed = dir.path().join("z6.json");
    std::fs::write(&composed, &c.stdout).unwrap();
    assert_eq!(json(&run(&["degree", composed.to_str().unwrap()]))["rounded"], 6);

    std::fs::write(dir.path().join("bad.json"), "{\"domain\": 3}").unwrap();
    assert_eq!(run(&["build", dir.path().join("bad.json").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn jmap_input_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hopf.json");
    std::fs::write(&path, hopf_input().unwrap().to_json().to_string()).unwrap();
    let target = format!("jmap:{}", path.display());
    let v = run(&["verify", &target, "--trials", "10", "--samples", "500"]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stderr));
    let e = run(&["eval", &target, "--point", "1,0,0,0"]);
    assert_eq!(json(&e)["exact"], serde_json::json!(["1/1", "0/1", "0/1"]));
}
