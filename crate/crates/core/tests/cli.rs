//! Exit codes and output of the command line front end.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str], doc: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_preradlab"));
    let file;
    if let Some(doc) = doc {
        file = std::env::temp_dir().join(format!("preradlab-cli-{}-{}.job", std::process::id(), doc.len()));
        std::fs::File::create(&file).unwrap().write_all(doc.as_bytes()).unwrap();
        cmd.args(&args[..1]).arg(&file).args(&args[1..]);
    } else {
        cmd.args(args);
    }
    cmd.output().unwrap()
}

const JOB: &str = "[ring]\nspec = cyclic(4)\n[modules]\nM = regular\nZ = quotient(M, 2)\n[checks]\nbjkn_prime M\nverify T14.3\n";

#[test]
fn check_succeeds_on_negative_verdicts() {
    let out = run(&["check"], Some(JOB));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("bjkn_prime M: false"), "{text}");
}

#[test]
fn structured_output_has_versions() {
    let out = run(&["check", "--format", "structured"], Some(JOB));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert!(v["engine_version"].is_string());
    assert!(v.get("runtime_ms").is_none());
    let timed = run(&["check", "--format", "structured", "--timing"], Some(JOB));
    let v: serde_json::Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(v["runtime_ms"].is_number());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["define"], Some("[ring]\nspec = cyclic(4\n")).status.code(), Some(1));
    assert_eq!(run(&["define"], Some("[ring]\nspec = cyclic(4)\n[checks]\nprime N\n")).status.code(), Some(1));
    assert_eq!(run(&["define", "--cap-ring", "2"], Some(JOB)).status.code(), Some(2));
    let zero = format!("{JOB}prime Z\n");
    let out = run(&["check"], Some(&zero));
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(run(&["verify", "--ring", "cyclic(2)", "--theorem", "T99"], None).status.code(), Some(3));
}

#[test]
fn verify_inline_ring() {
    let out = run(&["verify", "--ring", "matrix(cyclic(2), 2)", "--theorem", "T15"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("consistent"));
}

#[test]
fn corpus_sweep_is_seeded() {
    let a = run(&["corpus", "--seed", "3", "--instances", "20", "--format", "structured"], None);
    let b = run(&["corpus", "--seed", "3", "--instances", "20", "--format", "structured"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
