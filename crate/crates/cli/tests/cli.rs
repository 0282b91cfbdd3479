use std::io::Write;
use std::process::{Command, Output, Stdio};

fn beliefs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_beliefs")).args(args).output().unwrap()
}

fn repl(script: &str) -> String {
    let mut child = Command::new(env!("CARGO_BIN_EXE_beliefs"))
        .arg("repl")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(script.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(beliefs(&["run", "bundled:conan"]).status.code(), Some(0));
    assert_eq!(beliefs(&["run", "bundled:agm-example"]).status.code(), Some(0));
    assert_eq!(beliefs(&["run", "bundled:recovery-expected"]).status.code(), Some(1));
    assert_eq!(beliefs(&["run", "no/such/file.scn"]).status.code(), Some(2));
    assert_eq!(beliefs(&["run", "bundled:nope"]).status.code(), Some(2));
    assert_eq!(beliefs(&["run", "bundled:conan", "--strategy", "sometimes"]).status.code(), Some(2));
    let overflow = beliefs(&["run", "bundled:no-recovery-monotone", "--max-iter", "1"]);
    assert_eq!(overflow.status.code(), Some(3));
}

#[test]
fn malformed_scenario_is_rejected_with_its_line() {
    let dir = std::env::temp_dir().join(format!("beliefs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.scn");
    std::fs::write(&path, "[signature]\natoms p1 p2\n[base]\nbelieve p1 &\n").unwrap();
    let out = beliefs(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
}

#[test]
fn json_trace_is_deterministic() {
    let a = beliefs(&["run", "bundled:conan", "--json", "-"]);
    let b = beliefs(&["run", "bundled:conan", "--json", "-"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["scenario"], "conan");
    assert!(v["rounds"].as_array().is_some_and(|r| !r.is_empty()));
}

#[test]
fn witnesses() {
    let mono = beliefs(&["witness", "--mode", "monotone"]);
    assert!(mono.status.success());
    assert!(String::from_utf8_lossy(&mono.stdout).contains("every selection loses p3"));
    let full = beliefs(&["witness", "--mode", "full", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&full.stdout).unwrap();
    assert!(v["failing_runs"].as_u64().unwrap() >= 1);
    assert_eq!(v["contrast_holds"], true);
}

#[test]
fn scenarios_are_listed() {
    let out = String::from_utf8(beliefs(&["scenarios"]).stdout).unwrap();
    assert!(out.lines().any(|l| l == "conan"));
    let text = String::from_utf8(beliefs(&["scenarios", "conan"]).stdout).unwrap();
    assert!(text.contains("[script]"));
}

#[test]
fn repl_session() {
    let out = repl(":axioms\n:believe p1\n:quad p1 : p2 => p3 mode 0\n:expand p2\n:undo\n:show base\n:frobnicate\n:quit\n");
    assert!(!out.contains("fail"), "{out}");
    assert!(out.contains("beliefs: p1 & p2 & p3"), "{out}");
    assert!(out.contains("undone; beliefs: p1\n"), "{out}");
    assert!(out.contains("error: unknown command"), "{out}");
}

#[test]
fn repl_loads_a_bundled_scenario() {
    let out = repl(":load bundled:conan\n:expand learn\n:contract doubt\n:show base\n");
    assert!(out.contains("loaded conan"), "{out}");
    assert!(!out.contains("error"), "{out}");
}
