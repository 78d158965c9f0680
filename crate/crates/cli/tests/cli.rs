use std::process::{Command, Output};

use serde_json::Value;

fn modcancel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modcancel")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn agw_passes_with_json_report() {
    let out = modcancel(&["verify", "agw"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["status"], "pass");
    assert_eq!(v["report"]["difference"], "0");
    assert!(v["wall_time_s"].is_number());
}

#[test]
fn small_qorder_is_rejected_before_computing() {
    let out = modcancel(&["verify", "thm31", "--k", "9", "--qorder", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let out = modcancel(&["verify", "thm31", "--k", "1", "--qorder", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn negative_weight_routes_to_degenerate() {
    let out = modcancel(&["verify", "thm33", "--d", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["theorem"], "degenerate");
    let notes: Vec<&str> = v["report"]["notes"].as_array().unwrap().iter().map(|n| n.as_str().unwrap()).collect();
    assert!(notes.contains(&"both sides zero"), "{notes:?}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(modcancel(&["bogus"]).status.code(), Some(2));
    assert_eq!(modcancel(&["verify", "thm31"]).status.code(), Some(2));
    assert_eq!(
        modcancel(&["verify", "han-zhang", "--k", "0", "--v-config", "tm-plus-trivial:3"]).status.code(),
        Some(2)
    );
    assert_eq!(modcancel(&["expand", "--series", "nope"]).status.code(), Some(2));
    assert_eq!(modcancel(&["genus", "--which", "ahat", "--dim", "5"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = json(&modcancel(&["verify", "thm31", "--k", "1"]));
    let b = json(&modcancel(&["verify", "thm31", "--k", "1"]));
    assert_eq!(a["report"], b["report"]);
    assert_eq!(a["report"]["h"][1]["combo"][0]["c"], "72");
}

#[test]
fn text_and_json_share_canonical_strings() {
    let j = json(&modcancel(&["verify", "han-zhang", "--k", "1"]));
    let t = String::from_utf8(modcancel(&["verify", "han-zhang", "--k", "1", "--format", "text"]).stdout).unwrap();
    for key in ["lhs", "rhs"] {
        assert!(t.contains(j["report"][key].as_str().unwrap()), "{key}");
    }
    for h in j["report"]["h"].as_array().unwrap() {
        assert!(t.contains(h["form"].as_str().unwrap()));
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("modcancel-cli-test-{}.json", std::process::id()));
    let out = modcancel(&["verify", "fiber-reduce", "--d", "2", "--n", "0", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["report"]["status"], "pass");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn expand_and_genus() {
    let v = json(&modcancel(&["expand", "--series", "delta1", "--qorder", "2"]));
    let c = &v["coefficients"];
    assert_eq!(c[0]["value"], "1/4");
    assert_eq!(c[1]["exp"], "1");
    assert_eq!(c[1]["value"], "6");
    let v = json(&modcancel(&["genus", "--which", "ahat", "--dim", "8"]));
    assert_eq!(v["top"], "7/5760*p1^2 - 1/1440*p2");
}

#[test]
fn quick_suite_passes() {
    let out = modcancel(&["suite"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["passed"], true);
    assert_eq!(v["summary"]["criteria"].as_array().unwrap().len(), 12);
}
