use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_emr-edge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn compare_table_shows_published_numbers() {
    let t = stdout(&["compare", "--scenario", "paper"]);
    for needle in ["9.87", "26.85", "145.7", "247.467", "93.23", "89.15", "80.77", "40.49"] {
        assert!(t.contains(needle), "missing {needle} in\n{t}");
    }
}

#[test]
fn share_total() {
    let t = stdout(&["share"]);
    assert!(t.contains("147"), "{t}");
    let t = stdout(&["share", "--count-hosts"]);
    assert!(t.contains("150"), "{t}");
}

#[test]
fn out_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    stdout(&["report", "--out", out.to_str().unwrap()]);
    for name in ["allocation.csv", "delay_bars.csv", "improvements.csv", "sharing.csv", "report.json"] {
        let path = out.join(name);
        let body = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("{name} missing"));
        assert!(!body.is_empty());
    }
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(json["sharing"]["total"], 147);
    assert_eq!(json["scenario_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["report", "--format", "json"][..],
        &["delay", "--samples", "20000", "--seed", "9", "--format", "csv"][..],
        &["sweep", "--format", "csv"][..],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn scenario_file_round_trips_through_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    std::fs::write(&path, emr_edge::EdgeScenario::paper().to_json()).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(
        stdout(&["compare", "--scenario", p]),
        stdout(&["compare", "--scenario", "paper"])
    );
}

#[test]
fn invalid_scenario_exits_2_naming_the_rule() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut s = emr_edge::EdgeScenario::paper();
    s.devices[0].capacity_gb = -1.0;
    std::fs::write(&path, s.to_json()).unwrap();
    let out = run(&["allocate", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("capacity"), "{err}");
}

#[test]
fn unknown_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("typo.json");
    let mut v: serde_json::Value =
        serde_json::from_str(&emr_edge::EdgeScenario::paper().to_json()).unwrap();
    v["recrods"] = serde_json::json!({});
    std::fs::write(&path, v.to_string()).unwrap();
    let out = run(&["allocate", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_scenario_exits_3() {
    let out = run(&["allocate", "--scenario", "/nonexistent/scenario.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn weights_need_custom_mode() {
    let out = run(&["allocate", "--mode", "omission", "--weights", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    stdout(&["allocate", "--mode", "custom", "--weights", "1,1,1"]);
}

#[test]
fn paper_mode_refuses_other_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let mut s = emr_edge::EdgeScenario::paper();
    s.devices[0].capacity_gb = 200.0;
    std::fs::write(&path, s.to_json()).unwrap();
    let out = run(&["allocate", "--mode", "paper", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(run(&["compare", "--bogus"]).status.code(), Some(2));
}

#[test]
fn custom_weights_are_validated() {
    assert_eq!(run(&["allocate", "--mode", "custom", "--weights", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["allocate", "--mode", "custom", "--weights", "1,-1,1"]).status.code(), Some(2));
    // combination term alone is the min-combo search
    let t = stdout(&["allocate", "--mode", "custom", "--weights", "0,0,1"]);
    assert_eq!(t, stdout(&["allocate", "--mode", "min-combo"]).replace("min-combo", "custom"));
}
