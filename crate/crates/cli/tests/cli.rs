use std::process::{Command, Output};

fn smca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smca"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("smca-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn solve_llg_reproduces_the_table() {
    let out = smca(&["solve", "llg"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("allocation: {local1, local2}"));
    let row = |name: &str| {
        text.lines()
            .find(|l| l.starts_with(name))
            .unwrap()
            .split_whitespace()
            .skip(1)
            .map(str::to_string)
            .collect::<Vec<_>>()
    };
    assert_eq!(row("first-price"), ["6", "7", "0", "13"]);
    assert_eq!(row("vcg "), ["2", "3", "0", "5"]);
    assert_eq!(row("vn"), ["4", "5", "0", "9"]);

    let doc = json(&smca(&["--json", "solve", "llg"]));
    assert_eq!(doc["payments"]["vn"], serde_json::json!(["4", "5", "0"]));
    assert_eq!(doc["payments"]["vcg"], serde_json::json!(["2", "3", "0"]));
    assert_eq!(doc["winners"], serde_json::json!(["local1", "local2"]));
    assert_eq!(doc["secc"]["payer_set"], serde_json::json!([1, 2]));
}

#[test]
fn solve_bull_vn() {
    let doc = json(&smca(&["solve", "bull", "--bids", "5,4,4,6,6", "--json"]));
    assert_eq!(doc["payments"]["vn"], serde_json::json!(["5", "1", "1", "0", "0"]));
    assert_eq!(doc["minimum_revenue"], "7");
}

#[test]
fn single_bidder_pays_nothing_under_vcg() {
    let path = temp_file(
        "single.json",
        r#"{"items": ["A"], "bidders": [{"name": "solo", "bundle": ["A"], "bid": "3.5"}]}"#,
    );
    let out = smca(&["--json", "solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["winners"], serde_json::json!(["solo"]));
    assert_eq!(doc["payments"]["vcg"], serde_json::json!(["0"]));
    assert_eq!(doc["payments"]["first-price"], serde_json::json!(["7/2"]));
}

#[test]
fn graph_classifications() {
    let llg = json(&smca(&["graph", "llg", "--json"]));
    assert_eq!(llg["complete_multipartite"], true);
    assert_eq!(llg["secc_guaranteed"], true);

    let line5 = json(&smca(&["graph", "line5", "--json"]));
    assert_eq!(line5["max_mis_size"], 3);
    assert_eq!(line5["complete_multipartite"], false);
    assert_eq!(line5["vn_nondecreasing_guaranteed"], true);

    let path = temp_file(
        "edgeless.json",
        r#"{"items": ["A", "B", "C", "D"], "bidders": [
            {"name": "a", "bundle": ["A"], "bid": "1"},
            {"name": "b", "bundle": ["B"], "bid": "1"},
            {"name": "c", "bundle": ["C"], "bid": "1"},
            {"name": "d", "bundle": ["D"], "bid": "1"}]}"#,
    );
    let out = smca(&["graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("no sufficient condition applies"));
    assert!(!text.contains("guaranteed"));
}

#[test]
fn checks_exit_cleanly() {
    for args in [
        &["check", "llg", "--rule", "vn", "--mode", "nondecreasing"][..],
        &["check", "llg", "--rule", "first-price", "--mode", "nondecreasing"][..],
        &["check", "line5", "--rule", "vn", "--mode", "overbid", "--seed", "7"][..],
    ] {
        let out = smca(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stdout(&out));
    }
}

#[test]
fn budget_exceeded_exits_with_three() {
    let out = smca(&["check", "bull", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(smca(&["solve", "/no/such/instance.json"]).status.code(), Some(2));
    assert_eq!(smca(&["solve", "llg", "--bids", "1,2"]).status.code(), Some(2));
    assert_eq!(smca(&["solve", "llg", "--bids", "1,x,3"]).status.code(), Some(2));
    let path = temp_file("broken.json", "{\"items\": [");
    assert_eq!(smca(&["solve", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(smca(&["check", "llg", "--rule", "nonsense"]).status.code(), Some(2));
}

#[test]
fn export_round_trips() {
    let exported = stdout(&smca(&["export", "bull"]));
    let path = temp_file("bull.json", &exported);
    let direct = json(&smca(&["--json", "solve", "bull"]));
    let via_file = json(&smca(&["--json", "solve", path.to_str().unwrap()]));
    assert_eq!(direct["payments"], via_file["payments"]);
    assert_eq!(stdout(&smca(&["export", path.to_str().unwrap()])), exported);
}
