//! Evaluation of tactic expressions and checked application to goals.

use crate::kernel::derived as d;
use crate::kernel::TheoremStore;

use super::conv;
use super::expr::{InfixOp, TacticExpr, TypeMismatch};
use super::goal::Goal;
use super::registry::Registry;
use super::value::{all_tac, by, orelse, suffices_by, then, then_nth, Outcome, Tactic, TacticError, TacticValue};

/// Evaluates `e` to a value of its type. Theorem names are resolved here,
/// so unknown names are evaluation errors.
pub fn eval(e: &TacticExpr, reg: &Registry, store: &TheoremStore) -> Result<TacticValue, TacticError> {
    Ok(match e {
        TacticExpr::Lookup(name, ty) => {
            let entry = reg.get(name).ok_or_else(|| TacticError::UnknownTactic(name.to_string()))?;
            if entry.ty != *ty {
                return Err(TypeMismatch(format!("`{name}` has type {}, expected {ty}", entry.ty)).into());
            }
            entry.imp.clone().ok_or_else(|| TacticError::OpaqueTactic(name.to_string()))?
        }
        TacticExpr::ThmRef(name) => TacticValue::Thm(thm(name, store)?),
        TacticExpr::Gsym(t) => TacticValue::Thm(conv::gsym(&eval(t, reg, store)?.into_thm()?)?),
        TacticExpr::ThmList(es) => {
            TacticValue::ThmList(es.iter().map(|t| eval(t, reg, store)?.into_thm()).collect::<Result<_, _>>()?)
        }
        TacticExpr::Quot(q) => TacticValue::Quot(q.clone()),
        TacticExpr::QuotList(es) => {
            TacticValue::QuotList(es.iter().map(|t| eval(t, reg, store)?.into_quot()).collect::<Result<_, _>>()?)
        }
        TacticExpr::Apply(f, a) => eval(f, reg, store)?.call(eval(a, reg, store)?)?,
        TacticExpr::Infix(op, l, r) => TacticValue::Tac(eval_infix(*op, l, r, reg, store)?),
        TacticExpr::Nth(k, t) => TacticValue::Tac(then_nth(all_tac(), *k as usize, tac(t, reg, store)?)),
    })
}

fn thm(name: &str, store: &TheoremStore) -> Result<crate::kernel::Thm, TacticError> {
    if !store.contains(name) {
        return Err(TacticError::UnknownTheorem(name.to_string()));
    }
    Ok(d::lemma(store, name)?)
}

/// Evaluates an expression of type TAC.
pub fn tac(e: &TacticExpr, reg: &Registry, store: &TheoremStore) -> Result<Tactic, TacticError> {
    eval(e, reg, store)?.into_tac()
}

fn eval_infix(
    op: InfixOp,
    l: &TacticExpr,
    r: &TacticExpr,
    reg: &Registry,
    store: &TheoremStore,
) -> Result<Tactic, TacticError> {
    if matches!(op, InfixOp::By | InfixOp::SufficesBy) {
        let q = eval(l, reg, store)?.into_quot()?;
        let t = tac(r, reg, store)?;
        return Ok(if op == InfixOp::By { by(q, t) } else { suffices_by(q, t) });
    }
    let t1 = tac(l, reg, store)?;
    Ok(match op {
        InfixOp::Then => then(t1, tac(r, reg, store)?),
        InfixOp::Orelse => orelse(t1, tac(r, reg, store)?),
        InfixOp::ThenLt => match r {
            TacticExpr::Nth(k, t) => then_nth(t1, *k as usize, tac(t, reg, store)?),
            _ => then_nth(t1, 1, tac(r, reg, store)?),
        },
        InfixOp::By | InfixOp::SufficesBy => unreachable!(),
    })
}

/// Applies `t` to `g`. In debug builds the justification is checked
/// against the goal before the outcome is returned.
pub fn apply_tactic(t: &Tactic, g: &Goal) -> Result<Outcome, TacticError> {
    let o = t.apply(g)?;
    #[cfg(debug_assertions)]
    super::value::check_validity(g, &o)?;
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::syntax::parse_term;
    use crate::tactic::types::TacticType as T;

    fn setup() -> (Registry, TheoremStore) {
        let store = TheoremStore::bundled();
        (Registry::builtin(&store), store)
    }

    #[test]
    fn unknown_and_opaque_names_are_reported() {
        let (reg, store) = setup();
        let e = TacticExpr::apply(TacticExpr::lookup("fs", T::ThmListTac), TacticExpr::ThmList(vec![TacticExpr::thm("NO_SUCH_THM")]));
        assert_eq!(eval(&e, &reg, &store).unwrap_err(), TacticError::UnknownTheorem("NO_SUCH_THM".into()));
        let e = TacticExpr::lookup("frobnicate", T::Tac);
        assert_eq!(eval(&e, &reg, &store).unwrap_err(), TacticError::UnknownTactic("frobnicate".into()));
        let reg = reg.with_custom("MY_SOLVER", T::Tac, None).unwrap();
        let e = TacticExpr::lookup("MY_SOLVER", T::Tac);
        assert_eq!(eval(&e, &reg, &store).unwrap_err(), TacticError::OpaqueTactic("MY_SOLVER".into()));
    }

    #[test]
    fn gsym_flips_rewriting_direction() {
        let (reg, store) = setup();
        let g = Goal::new(parse_term("a + b = c").unwrap());
        let mut results = Vec::new();
        for th in [TacticExpr::thm("ADD_COMM"), TacticExpr::gsym(TacticExpr::thm("ADD_COMM"))] {
            let e = TacticExpr::apply(TacticExpr::lookup("simp", T::ThmListTac), TacticExpr::ThmList(vec![th]));
            let o = apply_tactic(&tac(&e, &reg, &store).unwrap(), &g).unwrap();
            results.push(o.goals[0].concl.to_string());
        }
        // ordered rewriting yields the same normal form either way
        assert_eq!(results[0], results[1]);
        let rev = eval(&TacticExpr::gsym(TacticExpr::thm("ADD_0")), &reg, &store).unwrap().into_thm().unwrap();
        assert_eq!(rev.concl().to_string(), "!n. n = n + 0");
    }

    #[test]
    fn then_lt_targets_the_selected_subgoal() {
        let (reg, store) = setup();
        let g = Goal::new(parse_term("p ==> p /\\ T").unwrap());
        let strip = TacticExpr::infix(InfixOp::Then, TacticExpr::lookup("strip_tac", T::Tac), TacticExpr::lookup("conj_tac", T::Tac));
        let second = TacticExpr::infix(InfixOp::ThenLt, strip.clone(), TacticExpr::nth(2, TacticExpr::apply(TacticExpr::lookup("fs", T::ThmListTac), TacticExpr::ThmList(vec![]))));
        let o = apply_tactic(&tac(&second, &reg, &store).unwrap(), &g).unwrap();
        assert_eq!(o.goals.len(), 1);
        assert_eq!(o.goals[0].concl.to_string(), "p");
        let first = TacticExpr::infix(InfixOp::ThenLt, strip, TacticExpr::apply(TacticExpr::lookup("fs", T::ThmListTac), TacticExpr::ThmList(vec![])));
        let o = apply_tactic(&tac(&first, &reg, &store).unwrap(), &g).unwrap();
        assert_eq!(o.goals.len(), 1);
        assert_eq!(o.goals[0].concl.to_string(), "T");
    }
}
