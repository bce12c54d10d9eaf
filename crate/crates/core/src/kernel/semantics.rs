//! Bounded evaluation of terms over small naturals.
//!
//! Quantifiers range over `0..=bound` for `!` and `0..=4*bound+4` for `?`,
//! so a term that holds for all values can still evaluate to false only
//! when an existential witness lies beyond the search range.

use std::collections::BTreeMap;

use super::term::{Conn, NatOp, Pred, Quant, Sort, Term, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Value {
    Nat(u64),
    Bool(bool),
}

pub type Valuation = BTreeMap<Var, Value>;

fn nat(t: &Term, env: &Valuation, bound: u64) -> u64 {
    match eval(t, env, bound) {
        Value::Nat(n) => n,
        Value::Bool(_) => unreachable!("well-sorted term"),
    }
}

fn truth(t: &Term, env: &Valuation, bound: u64) -> bool {
    match eval(t, env, bound) {
        Value::Bool(b) => b,
        Value::Nat(_) => unreachable!("well-sorted term"),
    }
}

/// Evaluates `t`; free variables missing from `env` read as `0`/`false`.
pub fn eval(t: &Term, env: &Valuation, bound: u64) -> Value {
    match t {
        Term::Var(v) => env.get(v).copied().unwrap_or(match v.sort {
            Sort::Nat => Value::Nat(0),
            Sort::Bool => Value::Bool(false),
        }),
        Term::Zero => Value::Nat(0),
        Term::Suc(a) => Value::Nat(nat(a, env, bound).saturating_add(1)),
        Term::Sum(a) => {
            let n = nat(a, env, bound);
            Value::Nat(n.saturating_mul(n.saturating_add(1)) / 2)
        }
        Term::Op(op, a, b) => {
            let (x, y) = (nat(a, env, bound), nat(b, env, bound));
            Value::Nat(match op {
                NatOp::Add => x.saturating_add(y),
                NatOp::Mul => x.saturating_mul(y),
            })
        }
        Term::Rel(p, a, b) => {
            let (x, y) = (nat(a, env, bound), nat(b, env, bound));
            Value::Bool(match p {
                Pred::Eq => x == y,
                Pred::Lt => x < y,
                Pred::Le => x <= y,
            })
        }
        Term::True => Value::Bool(true),
        Term::False => Value::Bool(false),
        Term::Not(a) => Value::Bool(!truth(a, env, bound)),
        Term::Bin(c, a, b) => {
            let x = truth(a, env, bound);
            Value::Bool(match c {
                Conn::And => x && truth(b, env, bound),
                Conn::Or => x || truth(b, env, bound),
                Conn::Imp => !x || truth(b, env, bound),
                Conn::Iff => x == truth(b, env, bound),
            })
        }
        Term::Quant(q, x, body) => {
            let v = Var::nat(x);
            let mut env = env.clone();
            let range = match q {
                Quant::Forall => 0..=bound,
                Quant::Exists => 0..=4 * bound + 4,
            };
            let mut it = range.map(|n| {
                env.insert(v.clone(), Value::Nat(n));
                truth(body, &env, bound)
            });
            Value::Bool(match q {
                Quant::Forall => it.all(|b| b),
                Quant::Exists => it.any(|b| b),
            })
        }
    }
}

/// True when `t` holds under every assignment of its free variables with
/// nats in `0..=bound` and both truth values for bools.
pub fn holds_bounded(t: &Term, bound: u64) -> bool {
    let vars: Vec<Var> = t.free_vars().into_iter().collect();
    let mut env = Valuation::new();
    all_assignments(&vars, 0, &mut env, bound, &mut |env| truth(t, env, bound))
}

/// Like [`holds_bounded`] for a sequent: whenever all `hyps` hold, so does `concl`.
pub fn sequent_holds_bounded(hyps: &[Term], concl: &Term, bound: u64) -> bool {
    let mut fv = concl.free_vars();
    for h in hyps {
        fv.extend(h.free_vars());
    }
    let vars: Vec<Var> = fv.into_iter().collect();
    let mut env = Valuation::new();
    all_assignments(&vars, 0, &mut env, bound, &mut |env| {
        !hyps.iter().all(|h| truth(h, env, bound)) || truth(concl, env, bound)
    })
}

fn all_assignments(
    vars: &[Var],
    i: usize,
    env: &mut Valuation,
    bound: u64,
    f: &mut dyn FnMut(&Valuation) -> bool,
) -> bool {
    if i == vars.len() {
        return f(env);
    }
    let v = &vars[i];
    let values: Vec<Value> = match v.sort {
        Sort::Nat => (0..=bound).map(Value::Nat).collect(),
        Sort::Bool => vec![Value::Bool(false), Value::Bool(true)],
    };
    for val in values {
        env.insert(v.clone(), val);
        if !all_assignments(vars, i + 1, env, bound, f) {
            return false;
        }
    }
    env.remove(v);
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::syntax::parse_term;

    #[test]
    fn evaluates_arithmetic() {
        assert!(holds_bounded(&parse_term("2 * sum n = n * (n + 1)").unwrap(), 8));
        assert!(!holds_bounded(&parse_term("n + 1 = n").unwrap(), 3));
        assert!(holds_bounded(&parse_term("?k. m + k = m + 2").unwrap(), 3));
    }

    #[test]
    fn sequents() {
        let h = parse_term("x = 2").unwrap();
        assert!(sequent_holds_bounded(std::slice::from_ref(&h), &parse_term("x + x = 4").unwrap(), 5));
        assert!(!sequent_holds_bounded(&[], &parse_term("x + x = 4").unwrap(), 5));
    }
}
