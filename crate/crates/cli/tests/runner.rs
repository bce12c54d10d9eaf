use tactica_cli::runner::{export_text, run_text, ExportError};
use tactica_cli::session_with;

const TUTORIAL: &str = include_str!("../../../proofs/tutorial.proof");

fn libs(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[test]
fn tutorial_file_passes() {
    let (mut s, _) = session_with(&libs(&["tutorial"])).unwrap();
    let report = run_text(&mut s, TUTORIAL).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.theorems.iter().map(|t| t.name.as_str()).collect::<Vec<_>>(), ["closed_form_sum", "add_swap"]);
    assert!(s.store().contains("closed_form_sum"));
}

#[test]
fn failures_name_theorem_and_sentence() {
    let (mut s, _) = session_with(&libs(&["tutorial"])).unwrap();
    let text = "theorem t: \"n + 0 = n\"\nproof\n  frobnicate the goal.\nqed\ntheorem u: \"n = n\"\nproof\n  simplify.\nqed\n";
    let report = run_text(&mut s, text).unwrap();
    assert!(!report.passed());
    let t = &report.theorems[0];
    assert_eq!((t.name.as_str(), t.line), ("t", 1));
    assert!(t.error.as_deref().unwrap().contains("frobnicate the goal"), "{t:?}");
    // A failure does not stop later theorems.
    assert!(report.theorems[1].passed());
    assert!(report.to_string().contains("FAIL t (line 1)"));
}

#[test]
fn empty_files_pass_and_format_errors_carry_lines() {
    let (mut s, _) = session_with(&[]).unwrap();
    let report = run_text(&mut s, "").unwrap();
    assert!(report.passed() && report.theorems.is_empty());
    assert_eq!(run_text(&mut s, "# c\n\ntheorem x \"p\"\n").unwrap_err().line, 3);
}

#[test]
fn setup_errors_fail_the_run() {
    let (mut s, _) = session_with(&[]).unwrap();
    let report = run_text(&mut s, "def \"x\" = \"no such tactic\"\ncustom gizmo FOO\n").unwrap();
    assert_eq!(report.setup_errors.len(), 2, "{report}");
    assert!(!report.passed());
}

#[test]
fn customs_already_loaded_are_accepted() {
    let (mut s, _) = session_with(&libs(&["logic"])).unwrap();
    let report = run_text(&mut s, "custom tactic REAL_ASM_ARITH_TAC\n").unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn export_rewrites_proofs_into_the_core_language() {
    let (mut s, _) = session_with(&libs(&["tutorial"])).unwrap();
    let exported = export_text(&mut s, TUTORIAL).unwrap();
    assert!(exported.contains("Induct_on ` n ` \\\\ fs [ SUM_DEF ]"), "{exported}");
    assert!(!exported.contains("def "));
    let (mut bare, _) = session_with(&[]).unwrap();
    let report = run_text(&mut bare, &exported).unwrap();
    assert!(report.passed(), "{report}\n{exported}");
}

#[test]
fn export_stops_at_a_failing_theorem() {
    let (mut s, _) = session_with(&[]).unwrap();
    let err = export_text(&mut s, "\n\ntheorem t: \"p\"\nproof\n  nonsense.\nqed\n").unwrap_err();
    assert!(matches!(err, ExportError::Theorem { line: 3, .. }), "{err}");
}
