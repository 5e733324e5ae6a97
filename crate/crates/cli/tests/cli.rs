use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_slopestab"));
    c.env_remove("SLOPESTAB_KMAX");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn spec(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn no_floats(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::Array(a) => a.iter().all(no_floats),
        Value::Object(m) => m.values().all(no_floats),
        _ => true,
    }
}

#[test]
fn oracle_all_matches_golden_file() {
    let out = run(&["--json", "oracle", "compare", "--scope", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let golden = include_str!("golden/oracle_all.json");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["--json", "catalog", "list"]);
    let b = run(&["--json", "catalog", "list"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["--json", "oracle", "compare", "--scope", "graded"]);
    let b = run(&["--json", "oracle", "compare", "--scope", "graded"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn catalog_entries_reproduce() {
    let list = json_of(&run(&["--json", "catalog", "list"]));
    let ids: Vec<String> = list
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids.len(), 11);
    for id in &ids {
        let out = run(&["--json", "catalog", "run", id]);
        assert_eq!(out.status.code(), Some(0), "{id}");
        let v = json_of(&out);
        assert_eq!(v["matches"], true, "{id}");
        assert!(no_floats(&v));
    }
    let pn = json_of(&run(&["--json", "catalog", "run", "pn-point"]));
    assert_eq!(pn["report"]["verdict"]["status"], "boundary-semistable");
    assert_eq!(pn["report"]["verdict"]["c_star"], "1/1");
    let node = json_of(&run(&["--json", "catalog", "run", "genus2-node"]));
    assert_eq!(node["report"]["verdict"]["status"], "stable-wrt-Z");
    let triple = json_of(&run(&["--json", "catalog", "run", "genus2-triple-point"]));
    assert_eq!(
        triple["report"]["verdict"]["status"],
        "strictly-destabilised"
    );
}

#[test]
fn slope_and_futaki_commands() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec(
        dir.path(),
        "p2.json",
        r#"{"schema_version":1,"kind":"point-on-smooth","parameters":{"n":2,"l_n":"1","k_l_n1":"-3","eps":"1"},"flags":{"saturates_at_eps":true}}"#,
    );
    let out = run(&["--json", "slope", "--spec", &s, "--c", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["mu_x"], "3/1");
    assert_eq!(v["at_c"]["futaki"], "0/1");
    assert!(no_floats(&v));
    let f = json_of(&run(&["--json", "futaki", "--spec", &s, "--c", "1/2"]));
    assert_eq!(f["agree"], true);
    let text = run(&["slope", "--spec", &s]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("verdict.status: boundary-semistable"));
}

#[test]
fn chow_command() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = spec(
        dir.path(),
        "g1.json",
        r#"{"schema_version":1,"kind":"curve-divisor","parameters":{"g":1,"d":3,"deg_z":1}}"#,
    );
    let g2 = spec(
        dir.path(),
        "g2.json",
        r#"{"schema_version":1,"kind":"curve-divisor","parameters":{"g":2,"d":5,"deg_z":1}}"#,
    );
    let g0 = spec(
        dir.path(),
        "g0.json",
        r#"{"schema_version":1,"kind":"curve-divisor","parameters":{"g":0,"d":3,"deg_z":1}}"#,
    );
    assert_eq!(
        json_of(&run(&["--json", "chow", "--spec", &g1]))["asymptotically_chow_stable"],
        true
    );
    assert_eq!(
        json_of(&run(&["--json", "chow", "--spec", &g2]))["asymptotically_chow_stable"],
        false
    );
    assert_eq!(run(&["chow", "--spec", &g0]).status.code(), Some(2));
    let toric = spec(
        dir.path(),
        "t.json",
        r#"{"schema_version":1,"kind":"toric-oracle-case","parameters":{"ambient":"P2","d":2,"m":1}}"#,
    );
    let out = run(&["--json", "chow", "--spec", &toric, "--c", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_of(&out)["leading_chow_weight"]
        .as_array()
        .unwrap()
        .iter()
        .all(|x| x["agree"] == true));
}

#[test]
fn newton_command() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec(
        dir.path(),
        "n.json",
        r#"{"schema_version":1,"kind":"newton-diagram","parameters":{"points":[[4,0],[2,1],[1,2],[0,3]],"genus":0,"degree":6}}"#,
    );
    let out = run(&["--json", "--kmax", "24", "newton", "--spec", &s]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["oracle"]["b0_match"], true);
    assert_eq!(v["basechange_order"], 2);
}

#[test]
fn kmax_env_and_flag() {
    let out = bin()
        .env("SLOPESTAB_KMAX", "8")
        .args(["--json", "oracle", "compare", "--scope", "p1"])
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["caps"]["p1"], 8);
    let out = bin()
        .env("SLOPESTAB_KMAX", "8")
        .args([
            "--json", "--kmax", "10", "oracle", "compare", "--scope", "p1",
        ])
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["caps"]["p1"], 10);
    let out = bin()
        .env("SLOPESTAB_KMAX", "lots")
        .args(["oracle", "compare"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_input_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = spec(
        dir.path(),
        "u.json",
        r#"{"schema_version":1,"kind":"curve-divisor","parameters":{"g":1,"d":3,"deg_z":1,"h":0}}"#,
    );
    let out = run(&["--json", "slope", "--spec", &unknown]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("unknown field `h`"));
    let broken = spec(dir.path(), "b.json", "{");
    assert_eq!(run(&["slope", "--spec", &broken]).status.code(), Some(2));
    assert_eq!(
        run(&["slope", "--spec", "/nonexistent/x.json"])
            .status
            .code(),
        Some(2)
    );
    let ok = spec(
        dir.path(),
        "ok.json",
        r#"{"schema_version":1,"kind":"curve-divisor","parameters":{"g":1,"d":3,"deg_z":1}}"#,
    );
    assert_eq!(
        run(&["futaki", "--spec", &ok, "--c", "7"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["futaki", "--spec", &ok, "--c", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["newton", "--spec", &ok]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "run", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["oracle", "compare", "--scope", "p9"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
