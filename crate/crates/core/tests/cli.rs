use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_unifluct"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("unifluct-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn documented_examples_byte_exact() {
    assert_eq!(stdout(&["ds", "--r", "2", "--s", "-2"]), r#"{"value":2}"#);
    assert_eq!(
        stdout(&["enumerate", "nc", "--n", "4", "--count-only"]),
        r#"{"count":14}"#
    );
    assert_eq!(
        stdout(&["wg", "--n", "2", "--cycle-type", "2"]),
        r#"{"num":[-1],"den":[0,-1,0,1]}"#
    );
    assert_eq!(
        stdout(&["k2-limit", "--left", "U,U", "--right", "U*,U*"]),
        r#"{"value":"2"}"#
    );
}

#[test]
fn moment_and_cumulant_from_spec_files() {
    let two = scratch(
        "two.json",
        r#"{"version":1,"groups":[[{"d":0,"eps":1}],[{"d":0,"eps":-1}]]}"#,
    );
    let p = two.to_str().unwrap();
    assert_eq!(stdout(&["moment", "--spec", p, "--N", "3"]), r#"{"value":"1"}"#);
    assert_eq!(stdout(&["cumulant", "--spec", p, "--N", "3"]), r#"{"value":"1"}"#);

    // E Tr(D U D U*) = (Tr D)² / N with D = diag(1, 1/2)
    let with_d = scratch(
        "d.json",
        r#"{"version":1,"groups":[[{"d":0,"eps":1},{"d":0,"eps":-1}]],"matrices":[[["1","0"],["0","1/2"]]]}"#,
    );
    assert_eq!(
        stdout(&["moment", "--spec", with_d.to_str().unwrap()]),
        r#"{"value":"9/8"}"#
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["ds", "--r", "0", "--s", "1"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "nc", "--n", "11"]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        run(&["moment", "--spec", "/nonexistent/spec.json"]).status.code(),
        Some(2)
    );
    let bad = scratch("bad.json", r#"{"version":1,"groups":[[{"d":0,"eps":2}]]}"#);
    let out = run(&["moment", "--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn caps_from_environment() {
    let out = bin()
        .env("UNIFLUCT_MAX_ENUM_N", "11")
        .args(["enumerate", "nc", "--n", "11", "--count-only"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"count":58786}"#);
}

#[test]
fn formats_and_output_file() {
    assert_eq!(
        stdout(&["--format", "csv", "ds", "--r", "1", "--s", "-1"]),
        "key,value\nvalue,1"
    );
    let path = std::env::temp_dir().join(format!("unifluct-out-{}.json", std::process::id()));
    stdout(&[
        "--output",
        path.to_str().unwrap(),
        "mu",
        "--n",
        "4",
        "--cycle-type",
        "4",
    ]);
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), r#"{"value":-5}"#);
}

#[test]
fn monte_carlo_is_reproducible_and_self_describing() {
    let args = ["mc", "wg", "--N", "4", "--samples", "2000", "--seed", "7"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["seed"], 7);
    assert!(v["run_config"].is_object());
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
}
