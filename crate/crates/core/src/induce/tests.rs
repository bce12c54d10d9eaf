use super::*;
use crate::grammar::core_grammar;
use crate::kernel::TheoremStore;
use crate::parser::parse_sentence;

fn setup() -> (Grammar, Registry) {
    let reg = Registry::builtin(&TheoremStore::bundled());
    (core_grammar(&reg), reg)
}

fn meaning(g: &Grammar, s: &str) -> String {
    render_value(&parse_sentence(g, s, Category::Root).unwrap_or_else(|e| panic!("{s}: {e}")).value)
}

#[test]
fn generalizes_theorem_argument() {
    let (g, _) = setup();
    let r = def(&g, "simplify with ADD_ASSOC", "fs [ADD_ASSOC]", Source::Induced).unwrap();
    assert_eq!(r.rules_added(), 2);
    assert_eq!(r.rules[1].to_string(), "TACTIC -> simplify with THM :: λx1. {fs} (thmlist x1) :: induced");
    assert_eq!(meaning(&r.grammar, "simplify with ADD_COMM"), meaning(&g, "fs [ADD_COMM]"));
}

#[test]
fn generalizes_list_argument() {
    let (g, _) = setup();
    let r = def(&g, "simplify with [LE_LT]", "fs [LE_LT]", Source::Induced).unwrap();
    assert_eq!(r.rules_added(), 2);
    assert_eq!(meaning(&r.grammar, "simplify with [ADD_COMM, ADD_ASSOC]"), "fs [ ADD_COMM, ADD_ASSOC ]");
}

#[test]
fn redefinition_and_conflicts() {
    let (g, _) = setup();
    let g = def(&g, "simplify with ADD_ASSOC", "fs [ADD_ASSOC]", Source::Induced).unwrap().grammar;
    let same = def(&g, "simplify with ADD_COMM", "fs [ADD_COMM]", Source::Induced).unwrap();
    assert_eq!(same.rules_added(), 0);
    assert_eq!(same.grammar.version(), g.version());
    assert!(matches!(
        def(&g, "simplify with ADD_COMM", "rw [ADD_COMM]", Source::Induced),
        Err(DefError::AlreadyDefined { .. })
    ));
    assert!(matches!(def(&g, "x", "fs [", Source::Induced), Err(DefError::DefinitionUnparsable(_))));
    assert!(matches!(def(&g, "x", "nonsense_tactic", Source::Induced), Err(DefError::DefinitionUnparsable(_))));
}

#[test]
fn literal_only_when_nothing_matches() {
    let (g, _) = setup();
    let r = def(&g, "finish it", "metis_tac []", Source::Induced).unwrap();
    assert_eq!(r.rules_added(), 1);
    assert_eq!(meaning(&r.grammar, "finish it"), "metis_tac [ ]");
}

#[test]
fn ungrouped_tactic_repetition_is_rejected() {
    let (g, _) = setup();
    let e = def(&g, "all_tac and then fs []", "all_tac THEN fs []", Source::Induced).unwrap_err();
    assert!(matches!(e, DefError::WouldBeAmbiguous(_)), "{e}");
    // Enclosed arguments group themselves.
    let r = def(&g, "first ( all_tac ) then ( fs [] )", "all_tac THEN fs []", Source::Induced).unwrap();
    assert_eq!(r.rules_added(), 2);
}

#[test]
fn customs_and_composition() {
    let (g, reg) = setup();
    let (g, reg) = add_custom(&g, &reg, "REAL_ASM_ARITH_TAC", TacticType::Tac, None).unwrap();
    assert!(matches!(
        add_custom(&g, &reg, "REAL_ASM_ARITH_TAC", TacticType::Tac, None),
        Err(CustomError::Duplicate(_))
    ));
    let r = def(
        &g,
        "prove with [ADD_ASSOC]",
        "all_tac THEN ( fs [ ADD_ASSOC ] THEN NO_TAC) ORELSE (rw [ ADD_ASSOC ] THEN NO_TAC) ORELSE REAL_ASM_ARITH_TAC ORELSE metis_tac [ ADD_ASSOC ]",
        Source::Induced,
    )
    .unwrap();
    assert_eq!(r.rules_added(), 2);
    let r2 = def(&r.grammar, "'T' from [ CONJ_COMM ]", "'T' by ( prove with [CONJ_COMM] )", Source::Induced).unwrap();
    assert_eq!(r2.rules_added(), 2);
    let m = meaning(&r2.grammar, "'x = 1' from [ ADD_COMM ]");
    assert!(m.starts_with("` x = 1 ` by ( all_tac THEN"), "{m}");
    assert!(m.contains("metis_tac [ ADD_COMM ]"), "{m}");
}
