use std::process::{Command, Output};

use serde_json::Value;

fn graphhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphhom"))
        .args(args)
        .env_remove("GRAPHHOM_CAPS")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = graphhom(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "graphhom/1");
    v
}

fn error(args: &[&str], code: i32) -> Value {
    let out = graphhom(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    let v: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["exit"], code);
    v
}

fn betti(v: &Value) -> String {
    v["table"]["betti"].to_string()
}

#[test]
fn gamma_tables() {
    let v = ok_json(&["gamma", "--operad", "lie", "--rank", "2", "--h-twist", "--cohomology"]);
    assert_eq!(betti(&v), r#"{"2":1}"#);
    let v = ok_json(&["gamma", "--operad", "comm", "--rank", "2", "--twisted"]);
    assert_eq!(betti(&v), "{}");
    let v = ok_json(&["gamma", "--operad", "comm", "--rank", "2"]);
    assert_eq!(betti(&v), r#"{"2":1}"#);
}

#[test]
fn ribbon_tables() {
    for (g, b) in ["1", "0"].into_iter().zip(["1", "3"]) {
        let v = ok_json(&["ribbon", "--operad", "t", "--genus", g, "--boundary", b, "--cohomology"]);
        assert_eq!(betti(&v), r#"{"2":1}"#);
    }
}

#[test]
fn invalid_configurations_exit_2() {
    error(&["ribbon", "--genus", "0", "--boundary", "2"], 2);
    let e = error(&["gamma", "--operad", "foo", "--rank", "2"], 2);
    assert!(e["message"].as_str().unwrap().contains("foo"));
    error(&["gamma", "--operad", "t", "--rank", "2"], 2);
    let e = error(&["duality", "--rank", "2"], 2);
    assert!(e["message"].as_str().unwrap().contains("--operad"));
    error(&["duality", "--operad", "comm", "--genus", "1"], 2);
    error(&["gamma", "--operad", "comm", "--rank", "2", "--format", "xml"], 2);
}

#[test]
fn caps_exit_3() {
    error(&["gamma", "--operad", "comm", "--rank", "5"], 3);
    error(&["gamma", "--operad", "comm", "--rank", "3", "--cap-rank", "2"], 3);
    let out = Command::new(env!("CARGO_BIN_EXE_graphhom"))
        .args(["gamma", "--operad", "comm", "--rank", "3"])
        .env("GRAPHHOM_CAPS", "rank=2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_graphhom"))
        .args(["gamma", "--operad", "comm", "--rank", "2"])
        .env("GRAPHHOM_CAPS", "rank")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn duality_reports_pass() {
    let v = ok_json(&["duality", "--rank", "2", "--operad", "comm"]);
    assert_eq!(v["report"]["pass"], true);
    assert_eq!(v["report"]["shift_observed"], 2);
    let v = ok_json(&["duality", "--ribbon", "--genus", "0", "--boundary", "3", "--operad", "t"]);
    assert_eq!(v["report"]["pass"], true);
    assert_eq!(v["report"]["tables"].as_object().unwrap().len(), 6);
}

#[test]
fn sheaf_examples() {
    let v = ok_json(&["sheaf", "cohomology", "--example", "interval"]);
    assert_eq!(betti(&v), r#"{"0":1}"#);
    let v = ok_json(&["sheaf", "cohomology", "--example", "circle"]);
    assert_eq!(betti(&v), r#"{"0":1,"1":1}"#);
    let v = ok_json(&["sheaf", "cohomology", "--example", "interval", "--face", "0,1"]);
    assert_eq!(betti(&v), r#"{"1":1}"#);
    error(&["sheaf", "cohomology", "--example", "interval", "--face", "7"], 2);

    let v = ok_json(&["sheaf", "verdier", "--example", "point"]);
    assert_eq!(v["dual"]["stalks"]["0"]["dims"].to_string(), r#"{"-1":1,"0":2}"#);
    assert_eq!(betti(&v), r#"{"0":1}"#);
}

#[test]
fn sheaf_input_files() {
    let dir = std::env::temp_dir().join(format!("graphhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("interval.json");
    std::fs::write(&good, include_str!("../data/interval.json")).unwrap();
    let v = ok_json(&["sheaf", "cohomology", good.to_str().unwrap()]);
    assert_eq!(betti(&v), r#"{"0":1}"#);

    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"complex\": [").unwrap();
    let e = error(&["sheaf", "verdier", bad.to_str().unwrap()], 2);
    assert_eq!(e["error"], "malformed_json");
    let open = dir.join("open.json");
    std::fs::write(&open, r#"{"complex": {"vertices": [0, 1], "faces": [[0], [0, 1]]}}"#).unwrap();
    error(&["sheaf", "cohomology", open.to_str().unwrap()], 2);
    error(&["sheaf", "cohomology", dir.join("missing.json").to_str().unwrap()], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_passes_with_per_case_dims() {
    let v = ok_json(&["sheaf", "selftest", "--cases", "25"]);
    let cases = v["report"]["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 25);
    assert!(cases.iter().all(|c| c["pass"] == true && c["betti"].is_object()));
}

#[test]
fn outputs_are_byte_identical() {
    let dir = std::env::temp_dir().join(format!("graphhom-det-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (args, name) in [
        (vec!["sheaf", "selftest", "--cases", "4", "--seed", "11"], "selftest"),
        (vec!["duality", "--rank", "2", "--operad", "lie"], "duality"),
        (vec!["ribbon", "--genus", "0", "--boundary", "4", "--format", "csv"], "ribbon"),
    ] {
        let mut files = Vec::new();
        for i in 0..2 {
            let p = dir.join(format!("{name}{i}"));
            let mut a = args.clone();
            a.extend(["--out", p.to_str().unwrap()]);
            let out = graphhom(&a);
            assert_eq!(out.status.code(), Some(0));
            assert!(out.stdout.is_empty());
            files.push(std::fs::read(&p).unwrap());
        }
        assert_eq!(files[0], files[1], "{name}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_mirrors_json() {
    let args = ["duality", "--rank", "2", "--operad", "comm"];
    let v = ok_json(&args);
    let mut with_csv = args.to_vec();
    with_csv.extend(["--format", "csv"]);
    let out = graphhom(&with_csv);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(v["report"]["tables"][f[1]]["betti"][f[2]].as_u64().unwrap().to_string(), f[3]);
        rows += 1;
    }
    let total: usize = v["report"]["tables"]
        .as_object()
        .unwrap()
        .values()
        .map(|t| t["betti"].as_object().unwrap().len())
        .sum();
    assert_eq!(rows, total);
}
