use super::*;
use crate::grammar::core::core_grammar;
use crate::kernel::TheoremStore;
use crate::tactic::Registry;

fn grammar() -> Grammar {
    core_grammar(&Registry::builtin(&TheoremStore::bundled()))
}

fn parse(s: &str) -> String {
    let d = parse_sentence(&grammar(), s, Category::Root).unwrap_or_else(|e| panic!("{s}: {e}"));
    render_value(&d.value)
}

#[test]
fn applications_and_lists() {
    assert_eq!(parse("fs [ADD_COMM, ADD_ASSOC]"), "fs [ ADD_COMM, ADD_ASSOC ]");
    assert_eq!(parse("fs []"), "fs [ ]");
    assert_eq!(parse("irule LESS_TRANS"), "irule LESS_TRANS");
    assert_eq!(parse("rw [GSYM ADD_0]"), "rw [ GSYM ADD_0 ]");
    assert_eq!(parse("Induct_on `n`"), "Induct_on ` n `");
    assert_eq!(parse("first_x_assum mp_tac"), "first_x_assum mp_tac");
}

#[test]
fn infix_precedence() {
    // ORELSE binds tighter than THEN.
    let a = parse("all_tac THEN fs [] ORELSE DECIDE_TAC");
    let b = parse("all_tac THEN (fs [] ORELSE DECIDE_TAC)");
    assert_eq!(a, b);
    let c = parse("(all_tac THEN fs []) ORELSE DECIDE_TAC");
    assert_ne!(a, c);
    // Left associative.
    assert_eq!(parse("all_tac THEN all_tac THEN fs []"), parse("(all_tac THEN all_tac) THEN fs []"));
    assert_eq!(parse("`x = 1` by fs []"), "` x = 1 ` by ( fs [ ] )");
}

#[test]
fn application_argument_must_be_atomic() {
    let g = grammar();
    let all = parse_all(&g, &tokenize("rpt all_tac THEN fs []").unwrap(), Category::Root);
    assert_eq!(all.len(), 1);
    assert_eq!(render_value(&all[0].value), "rpt all_tac THEN fs [ ]");
}

#[test]
fn errors_report_prefix_and_ambiguity() {
    let g = grammar();
    match parse_sentence(&g, "fs [] THEN", Category::Root) {
        Err(ParseError::NoParse(msg)) => assert!(msg.contains("fs [ ]"), "{msg}"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_sentence(&g, "no_such_word", Category::Root), Err(ParseError::NoParse(_))));
    assert!(matches!(parse_sentence(&g, "'unclosed", Category::Root), Err(ParseError::Lex(_))));
}

#[test]
fn maximal_spans_find_arguments() {
    let g = grammar();
    let toks = tokenize("simplify with [LE_LT]").unwrap();
    let spans = maximal_spans(&g, &toks);
    assert!(spans.iter().any(|s| s.start == 2 && s.end == 5 && s.category == Category::ThmList), "{spans:?}");
    assert!(spans.iter().any(|s| s.start == 0 && s.end == 1 && s.category == Category::Thm));
}

