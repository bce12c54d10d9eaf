use std::process::Command;

fn tactica(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tactica")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

const TUTORIAL: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../proofs/tutorial.proof");

#[test]
fn grammar_dump_includes_libraries() {
    let (code, core, _) = tactica(&["--grammar-dump"]);
    assert_eq!(code, 0);
    assert!(core.lines().all(|l| l.ends_with(":: core")), "{core}");
    let (_, with_lib, _) = tactica(&["--grammar-dump", "--lib", "tutorial"]);
    assert!(with_lib.starts_with(&core));
    assert!(with_lib.contains(":: library(tutorial)"));
}

#[test]
fn run_exit_status_reflects_failures() {
    let (code, out, _) = tactica(&["run", TUTORIAL, "--lib", "tutorial"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("2/2 theorems proved"));
    let (code, out, _) = tactica(&["run", TUTORIAL]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL closed_form_sum"));
}

#[test]
fn format_errors_and_missing_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.proof");
    std::fs::write(&bad, "\ntheorem x \"p\"\n").unwrap();
    let (code, _, err) = tactica(&["run", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    let (code, _, err) = tactica(&["run", TUTORIAL, "--lib", "/no/such/lib.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("not found"), "{err}");
}

#[test]
fn export_then_run_without_libraries() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.proof");
    let (code, _, err) = tactica(&["export", TUTORIAL, "-o", out.to_str().unwrap(), "--lib", "tutorial"]);
    assert_eq!(code, 0, "{err}");
    let (code, stdout, _) = tactica(&["run", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
}
