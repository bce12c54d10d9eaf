//! The core grammar: one non-terminal per tactic type, lookup rules into
//! the registry, application rules, lists, parentheses and infixes.

use crate::tactic::expr::{InfixOp, TacticExpr};
use crate::tactic::registry::{Origin, Registry};

use super::{Category as C, Grammar, Lf, LookupMap, Prim, Rule, Sem, Source, Symbol};

fn cat(c: C) -> Symbol {
    Symbol::Cat(c)
}

fn word(w: &str) -> Symbol {
    Symbol::Word(w.into())
}

fn rule(lhs: C, rhs: Vec<Symbol>, lf: Lf) -> Rule {
    Rule::new(lhs, rhs, lf, Source::Core)
}

/// `λx1 ... xn. x1 x2 ... xn` over the given categories.
fn application(cats: &[C]) -> Lf {
    let args = (2..=cats.len() as u32).map(Lf::Var).collect();
    Lf::lam(cats, Lf::app(Lf::Var(1), args))
}

/// Functional categories resolved through `lookup`.
pub const LOOKUP_CATEGORIES: [C; 10] = [
    C::Tactic,
    C::ThmTac,
    C::ThmListTac,
    C::TacTac,
    C::QuotTac,
    C::ThmTacTac,
    C::TacTacTac,
    C::QuotThmTacThmTac,
    C::QuotListThmTacThmTac,
    C::QuotThmTacTac,
];

pub fn core_rules() -> Vec<Rule> {
    let mut rules = vec![rule(C::Root, vec![cat(C::Tactic)], Lf::identity(C::Tactic))];
    for c in LOOKUP_CATEGORIES {
        let ty = c.value_type().expect("typed");
        rules.push(rule(c, vec![cat(C::Token)], Lf::Prim(Prim::Lookup(ty))));
    }
    for (lhs, rhs) in [
        (C::Tactic, vec![C::ThmTac, C::Thm]),
        (C::Tactic, vec![C::ThmListTac, C::ThmList]),
        (C::Tactic, vec![C::TacTac, C::Tactic]),
        (C::Tactic, vec![C::QuotTac, C::Quot]),
        (C::Tactic, vec![C::ThmTacTac, C::ThmTac]),
        (C::Tactic, vec![C::TacTacTac, C::Tactic, C::Tactic]),
        (C::Tactic, vec![C::QuotThmTacTac, C::Quot, C::ThmTac]),
        (C::ThmTac, vec![C::QuotThmTacThmTac, C::Quot, C::ThmTac]),
        (C::ThmTac, vec![C::QuotListThmTacThmTac, C::QuotList, C::ThmTac]),
    ] {
        rules.push(rule(lhs, rhs.iter().map(|c| cat(*c)).collect(), application(&rhs)));
    }
    let gsym = Lf::lam(&[C::Thm], Lf::app(Lf::Prim(Prim::Gsym), vec![Lf::Var(1)]));
    rules.push(rule(C::Thm, vec![cat(C::Token)], Lf::identity(C::Token)));
    rules.push(rule(C::Thm, vec![word("GSYM"), cat(C::Thm)], gsym.clone()));
    rules.push(rule(C::Thm, vec![word("<-"), cat(C::Thm)], gsym));
    rules.push(rule(C::Quot, vec![Symbol::AnyQuotation], Lf::identity(C::Quot)));
    for (list, items, elem, finish, empty) in [
        (C::ThmList, C::Thms, C::Thm, Prim::ThmList, TacticExpr::ThmList(vec![])),
        (C::QuotList, C::Quots, C::Quot, Prim::QuotList, TacticExpr::QuotList(vec![])),
    ] {
        rules.push(rule(list, vec![word("["), word("]")], Lf::Val(Sem::Expr(empty))));
        rules.push(rule(list, vec![word("["), cat(items), word("]")], Lf::lam(&[items], Lf::app(Lf::Prim(finish), vec![Lf::Var(1)]))));
        rules.push(rule(items, vec![cat(elem)], Lf::lam(&[elem], Lf::app(Lf::Prim(Prim::Single), vec![Lf::Var(1)]))));
        rules.push(rule(
            items,
            vec![cat(elem), word(","), cat(items)],
            Lf::lam(&[elem, items], Lf::app(Lf::Prim(Prim::Cons), vec![Lf::Var(1), Lf::Var(2)])),
        ));
    }
    for c in [C::Tactic, C::ThmTac, C::Thm] {
        rules.push(rule(c, vec![word("("), cat(c), word(")")], Lf::identity(c)));
    }
    for op in InfixOp::ALL {
        let left = C::of_type(op.left_type()).expect("typed");
        rules.push(rule(C::Tactic, vec![cat(left), word(op.symbol()), cat(C::Tactic)], Lf::Prim(Prim::Infix(op))));
    }
    rules.push(rule(C::Tactic, vec![word("NTH_GOAL"), cat(C::Token), cat(C::Tactic)], Lf::Prim(Prim::Nth)));
    rules
}

/// Lookup table of the registry's built-ins. Customs are reached through
/// their own terminal rules.
pub fn builtin_lookups(reg: &Registry) -> LookupMap {
    reg.iter().filter(|(_, e)| e.origin == Origin::Builtin).map(|(n, e)| (n.into(), e.ty)).collect()
}

pub fn core_grammar(reg: &Registry) -> Grammar {
    Grammar::new(core_rules(), builtin_lookups(reg)).expect("core rules are well formed")
}

/// Words with a fixed role in the core grammar.
pub fn keywords() -> Vec<&'static str> {
    let mut out = vec!["GSYM", "<-", "NTH_GOAL"];
    out.extend(InfixOp::ALL.iter().map(|op| op.symbol()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::TheoremStore;

    #[test]
    fn core_rules_are_well_formed() {
        for r in core_rules() {
            r.check().unwrap();
        }
        let g = core_grammar(&Registry::builtin(&TheoremStore::bundled()));
        let dump = g.dump();
        assert!(dump.contains("TACTIC -> TOKEN :: lookup \"tactic\" :: core\n"), "{dump}");
        assert!(dump.contains("TACTIC -> THM_TAC THM :: λx1 x2. x1 x2 :: core\n"));
        assert!(dump.contains("THM_TAC -> TOKEN :: lookup \"thm -> tactic\" :: core\n"));
    }
}
