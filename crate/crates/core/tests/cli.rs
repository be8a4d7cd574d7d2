use std::process::{Command, Output};

use serde_json::{json, Value};
use torusdef::cli::Report;

fn torusdef(args: &[&str], workers: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_torusdef"));
    c.args(args);
    if let Some(w) = workers {
        c.env("TORUSDEF_WORKERS", w);
    }
    c.output().expect("run torusdef")
}

fn write(name: &str, v: &Value) -> String {
    let dir = std::env::temp_dir().join(format!("torusdef-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_string_lossy().into_owned()
}

fn z8() -> Value {
    json!({
        "mode": "abstract", "delta": "cyclic 2",
        "a": {"invariants": [4], "free_rank": 0, "action": [[[1]], [[1]]]},
        "kappa": [[[0], [0]], [[0], [1]]],
        "m": {"rank": 1, "action": [[[1]], [[1]]]}, "p": 2, "oracle_moduli": [3]
    })
}

#[test]
fn local_headline_on_stdout() {
    let cfg = write(
        "local.json",
        &json!({"mode": "local", "p": 2, "d": 1, "delta": "trivial", "a": 1, "chi_cyc": [1],
                "m": {"rank": 1, "action": [[[1]]]}}),
    );
    let out = torusdef(&["local", "--config", &cfg], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("R^□ ≅ O[Z/2][[x1,x2]]; components: 2"));
}

#[test]
fn exit_codes() {
    let mut bad = z8();
    bad["kappa"] = json!([[[0], [0]], [[0]]]);
    let out = torusdef(&["abstract", "--config", &write("bad.json", &bad)], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("missing the pair (1, 1)"));

    let out = torusdef(&["abstract", "--config", &write("z8.json", &z8()), "--oracle", "--budget", "1"], None);
    assert_eq!(out.status.code(), Some(3));
    let out = torusdef(&["abstract", "--config", &write("z8.json", &z8()), "--oracle"], None);
    assert_eq!(out.status.code(), Some(0));
    let out = torusdef(&["components", "--mu", "2,3"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = torusdef(&["abstract", "--config", "/nonexistent/config.json"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_report_round_trips() {
    let out = torusdef(&["components", "--mu", "2,4", "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let r: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(r.to_json(), text);
    assert_eq!(r.mode, "components");
}

#[test]
fn verify_is_byte_identical_across_worker_counts() {
    let a = torusdef(&["verify", "--grid", "small", "--seed", "3", "--json"], Some("1"));
    let b = torusdef(&["verify", "--grid", "small", "--seed", "3", "--json"], Some("4"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r: Report = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r.seed, Some(3));
    assert_eq!(r.criteria.len(), 9);
}
