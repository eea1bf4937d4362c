use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jetvar-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, file: &str, text: &str) -> PathBuf {
    let p = dir.join(file);
    std::fs::write(&p, text).unwrap();
    p
}

fn jetvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetvar")).args(args).env_remove("JETVAR_CACHE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = jetvar(&full);
    serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

#[test]
fn euler_lagrange_of_half_velocity_squared() {
    let dir = scratch("el");
    let f = write(&dir, "free.jv", "1/2 * u1_1**2 * d(x1)\n");
    let o = jetvar(&["el", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "-u1_11 * th(u1) ^ d(x1)");
    let v = json(&["el", f.to_str().unwrap()]);
    assert_eq!(v["source_form"], "-u1_11 * th(u1) ^ d(x1)");
    assert_eq!(v["context"]["n"], 1);
}

#[test]
fn helmholtz_verdicts() {
    let dir = scratch("helmholtz");
    let lagrangian = write(&dir, "l.jv", "(1/2 * u1_1**2 - u1**3) * d(x1)");
    let o = jetvar(&["helmholtz", lagrangian.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("\nVARIATIONAL"), "{}", stdout(&o));
    let source = write(&dir, "s.jv", "u1_1 * th(u1) ^ d(x1)");
    let o = jetvar(&["helmholtz", source.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("NOT VARIATIONAL"));
    let o = jetvar(&["--check", "helmholtz", source.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(json(&["helmholtz", source.to_str().unwrap()])["variational"], false);
}

#[test]
fn equivalence_up_to_total_divergence() {
    let dir = scratch("equiv");
    // u θ_x dx and -u_x θ dx differ by an integration by parts
    let a = write(&dir, "a.jv", "u1 * th(u1_1) ^ d(x1)");
    let b = write(&dir, "b.jv", "-u1_1 * th(u1) ^ d(x1)");
    let c = write(&dir, "c.jv", "u1 * th(u1) ^ d(x1)");
    let o = jetvar(&["equiv", a.to_str().unwrap(), b.to_str().unwrap(), "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "EQUIVALENT");
    let again = jetvar(&["equiv", b.to_str().unwrap(), c.to_str().unwrap(), "--k", "1"]);
    assert_eq!(stdout(&again).trim(), "NOT EQUIVALENT");
    assert_eq!(jetvar(&["--check", "equiv", b.to_str().unwrap(), c.to_str().unwrap(), "--k", "1"]).status.code(), Some(4));
    let v = json(&["equiv", a.to_str().unwrap(), b.to_str().unwrap(), "--k", "1"]);
    assert_eq!(v["equivalent"], true);
}

#[test]
fn wo1_table() {
    let o = jetvar(&["wo", "--n", "1", "--degrees", "0..3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 0 0 1"), "{}", stdout(&o));
    let v = json(&["wo", "--n", "1", "--degrees", "0..3"]);
    let dims: Vec<u64> = v["table"].as_array().unwrap().iter().map(|r| r["dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 0, 0, 1]);
}

#[test]
fn weil_tables() {
    let o = jetvar(&["weil", "--algebra", "so3", "--rel", "so3", "--degrees", "0..6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim    1 0 0 0 1 0 0"), "{}", stdout(&o));
    let v = json(&["weil", "--algebra", "gl2", "--rel", "so", "--degrees", "0..4", "--truncation", "2"]);
    let dims: Vec<u64> = v["table"].as_array().unwrap().iter().map(|r| r["dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 0, 1, 0, 1]);
    assert_eq!(v["relative"], "so2");
}

#[test]
fn gf_weights_accept_negative_ranges() {
    let o = jetvar(&["gf", "--n", "1", "--degrees", "0..3", "--weights", "-1..1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("w=-1"));
    let v = json(&["gf", "--n", "1", "--degrees", "0..3", "--weights", "-1..1"]);
    let table = v["table"].as_array().unwrap();
    assert_eq!(table.len(), 12);
    // human and machine output carry the same numbers
    for w in -1..=1 {
        let row: Vec<String> = table.iter().filter(|r| r["weight"] == w).map(|r| r["dimension"].to_string()).collect();
        let line = text.lines().find(|l| l.starts_with(&format!("w={w} "))).unwrap();
        let cells: Vec<&str> = line.split_whitespace().skip(1).collect();
        assert_eq!(cells, row.iter().map(String::as_str).collect::<Vec<_>>());
    }
}

#[test]
fn anomaly_output() {
    let o = jetvar(&["anomaly", "--n", "2", "--rep", "trivial:1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "P = -1/24 p1 ; OBSTRUCTED");
    assert_eq!(jetvar(&["--check", "anomaly", "--n", "2", "--rep", "trivial:1"]).status.code(), Some(4));
    let v = json(&["anomaly", "--n", "2", "--rep", "trivial:1"]);
    assert_eq!(v["polynomial"], "-1/24 p1");
    assert_eq!(v["verdict"], "OBSTRUCTED");
}

#[test]
fn mixed_anomaly_output() {
    let o = jetvar(&["mixed", "--n", "2", "--rep", "trivial:1", "--group", "u1", "--gauge", "charge:1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("(2,0): -1/24 p1"), "{text}");
    assert!(text.contains("(0,2): 1/2 c1^2"), "{text}");
    let v = json(&["mixed", "--n", "2", "--rep", "trivial:1", "--group", "u1", "--gauge", "charge:1"]);
    assert_eq!(v["components"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_suite_passes() {
    let o = jetvar(&["verify", "--suite", "lemma15", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&["verify", "--suite", "bianchi", "--n", "2", "--gauge", "so3"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn parse_errors_exit_2() {
    let dir = scratch("parse");
    let bad = write(&dir, "bad.jv", "1/2 * u1_1**2 *\n");
    let o = jetvar(&["el", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.jv:2:1: syntax error"), "{}", stderr(&o));
    let unknown = write(&dir, "unknown.jv", "q1 * d(x1)");
    let o = jetvar(&["el", unknown.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown symbol `q1`"));
    let forms = write(&dir, "forms.jv", "d(x1) * d(x1)");
    assert_eq!(jetvar(&["el", forms.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(jetvar(&["weil", "--algebra", "e8"]).status.code(), Some(2));
    assert_eq!(jetvar(&["anomaly", "--n", "2", "--rep", "spinor"]).status.code(), Some(2));
    assert_eq!(jetvar(&["wo", "--n", "1", "--degrees", "3..1"]).status.code(), Some(2));
    assert_eq!(jetvar(&["frobnicate"]).status.code(), Some(2));
    let v = json(&["el", bad.to_str().unwrap()]);
    assert_eq!(v["exit_code"], 2);
}

#[test]
fn precondition_errors_exit_3() {
    let dir = scratch("precondition");
    let not_top = write(&dir, "one_form.jv", "u1 * d(x1) ^ d(x2)");
    let o = jetvar(&["el", not_top.to_str().unwrap(), "--n", "3"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert_eq!(jetvar(&["anomaly", "--n", "4", "--rep", "trivial:1"]).status.code(), Some(3));
    assert_eq!(jetvar(&["mixed", "--n", "3", "--rep", "trivial:1", "--gauge", "charge:1"]).status.code(), Some(3));
    assert_eq!(jetvar(&["verify", "--suite", "cartan", "--truncation", "1"]).status.code(), Some(3));
}

#[test]
fn missing_file_exits_1() {
    assert_eq!(jetvar(&["el", "/nonexistent/input.jv"]).status.code(), Some(1));
}

#[test]
fn results_cache_is_reused() {
    let dir = scratch("cache");
    let path = dir.join("results.jsonl");
    let _ = std::fs::remove_file(&path);
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_jetvar")).args(args).env("JETVAR_CACHE", &path).output().unwrap()
    };
    let first = run(&["wo", "--n", "1", "--degrees", "0..3"]);
    assert_eq!(first.status.code(), Some(0));
    let lines = std::fs::read_to_string(&path).unwrap();
    assert_eq!(lines.lines().count(), 4);
    for line in lines.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["kind"], "wo");
    }
    let second = run(&["wo", "--n", "1", "--degrees", "0..3"]);
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 4);
    // a hand-edited record is served as is, so the cache is really read
    let edited = lines.replacen("\"degree\":3,\"weight\":null,\"dimension\":1", "\"degree\":3,\"weight\":null,\"dimension\":7", 1);
    std::fs::write(&path, edited).unwrap();
    assert!(stdout(&run(&["wo", "--n", "1", "--degrees", "0..3"])).contains("1 0 0 7"));
    std::fs::write(&path, "not json\n").unwrap();
    assert_eq!(run(&["wo", "--n", "1", "--degrees", "0..3"]).status.code(), Some(1));
}
