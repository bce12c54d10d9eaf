//! Proof-producing rewriting.
//!
//! A conversion maps a term `t` to a theorem `|- t = t'` (or `t <=> t'`).
//! Rewriting is bottom-up to a fixpoint and bounded by a step budget.

use std::cell::Cell;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::kernel::derived as d;
use crate::kernel::term::{fresh_name, match_term, Conn, NatOp, Sort, Term, Var};
use crate::kernel::Thm;

use super::arith;
use super::value::{fails, TacticError};

pub const REWRITE_BUDGET: usize = 1000;

#[derive(Clone, Debug)]
pub struct RewriteRule {
    pub lhs: Term,
    pub rhs: Term,
    pub schematic: BTreeSet<Var>,
    /// Names of nat variables the rule depends on that are not schematic;
    /// the rule cannot be used under a binder of the same name.
    pub fixed: BTreeSet<Arc<str>>,
    pub thm: Thm,
    pub permutative: bool,
}

fn schematic_of(th: &Thm) -> BTreeSet<Var> {
    let mut hyp_vars = BTreeSet::new();
    for h in th.hyps() {
        hyp_vars.extend(h.free_vars());
    }
    th.concl().free_vars().into_iter().filter(|v| !hyp_vars.contains(v)).collect()
}

fn rule_of_equation(th: Thm) -> Option<RewriteRule> {
    let (lhs, rhs) = th.concl().dest_equiv()?;
    let (lhs, rhs) = (lhs.clone(), rhs.clone());
    if lhs.alpha_eq(&rhs) {
        return None;
    }
    let schematic = schematic_of(&th);
    if let Term::Var(v) = &lhs {
        if schematic.contains(v) {
            return None;
        }
    }
    let lhs_vars = lhs.free_vars();
    if rhs.free_vars().iter().any(|v| schematic.contains(v) && !lhs_vars.contains(v)) {
        return None;
    }
    let mut fixed = BTreeSet::new();
    for h in th.hyps() {
        fixed.extend(h.free_vars().into_iter().filter(|v| v.sort == Sort::Nat).map(|v| v.name));
    }
    for v in th.concl().free_vars() {
        if v.sort == Sort::Nat && !schematic.contains(&v) {
            fixed.insert(v.name);
        }
    }
    let permutative = match_term(&lhs, &rhs, &schematic).is_some() && match_term(&rhs, &lhs, &schematic).is_some();
    Some(RewriteRule { lhs, rhs, schematic, fixed, thm: th, permutative })
}

/// Rewrite rules read off a theorem: conjunctions are split, universal
/// quantifiers become schematic variables, `p` becomes `p <=> T` and `~p`
/// becomes `p <=> F`.
pub fn rules_of_thm(th: &Thm) -> Result<Vec<RewriteRule>, TacticError> {
    let mut out = Vec::new();
    collect_rules(th, &mut out, 0)?;
    Ok(out)
}

fn collect_rules(th: &Thm, out: &mut Vec<RewriteRule>, depth: usize) -> Result<(), TacticError> {
    if depth > 32 {
        return Ok(());
    }
    let (th, _) = d::spec_all(th)?;
    match th.concl() {
        Term::Bin(Conn::And, ..) => {
            collect_rules(&d::conjunct1(&th)?, out, depth + 1)?;
            collect_rules(&d::conjunct2(&th)?, out, depth + 1)?;
        }
        Term::True | Term::False => {}
        Term::Rel(crate::kernel::Pred::Eq, ..) | Term::Bin(Conn::Iff, ..) => {
            out.extend(rule_of_equation(th.clone()));
        }
        Term::Not(inner) if **inner != Term::False => {
            out.extend(rule_of_equation(d::eqf_intro(&th)?));
        }
        _ => {
            out.extend(rule_of_equation(d::eqt_intro(&th)?));
        }
    }
    Ok(())
}

pub fn rules_of_thms(ths: &[Thm]) -> Result<Vec<RewriteRule>, TacticError> {
    let mut out = Vec::new();
    for th in ths {
        out.extend(rules_of_thm(th)?);
    }
    Ok(out)
}

/// Reverses top-level equations of a theorem, under quantifiers,
/// conjunctions and implications.
pub fn gsym(th: &Thm) -> Result<Thm, TacticError> {
    match th.concl() {
        Term::Quant(crate::kernel::Quant::Forall, x, _) => {
            let x = x.clone();
            let mut avoid = BTreeSet::new();
            for t in th.hyps().iter().chain([th.concl()]) {
                avoid.extend(t.free_vars().into_iter().map(|v| v.name));
            }
            let name = fresh_name(&x, &avoid);
            let inner = d::spec(&Term::nat_var(&name), th)?;
            let flipped = gsym(&inner)?;
            Ok(d::gen(&name, &flipped)?)
        }
        Term::Bin(Conn::And, ..) => Ok(d::conj(&gsym(&d::conjunct1(th)?)?, &gsym(&d::conjunct2(th)?)?)?),
        Term::Bin(Conn::Imp, p, _) => {
            let p = (**p).clone();
            let body = gsym(&d::undisch(th)?)?;
            Ok(d::disch(&p, &body)?)
        }
        Term::Rel(crate::kernel::Pred::Eq, ..) | Term::Bin(Conn::Iff, ..) => Ok(d::sym(th)?),
        _ => Ok(th.clone()),
    }
}

const HOLE: &str = "%hole";

/// `|- t = t'` where `t'` is `t` with child `i` rewritten by `th`.
pub fn congr_child(t: &Term, i: usize, th: &Thm) -> Result<Thm, TacticError> {
    let child = t.children()[i];
    let hole = Var::new(HOLE, child.sort());
    let mut kids: Vec<Term> = t.children().into_iter().cloned().collect();
    kids[i] = Term::Var(hole.clone());
    let ctx = t.with_children(kids);
    Ok(d::congr(&ctx, &hole, th)?)
}

/// Chains two optional rewrites of the same term.
pub fn then_opt(first: Option<Thm>, second: Option<Thm>) -> Result<Option<Thm>, TacticError> {
    Ok(match (first, second) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(d::trans(&a, &b)?),
    })
}

/// The right-hand side of a rewrite result, or `t` itself.
pub fn result_of(t: &Term, th: &Option<Thm>) -> Term {
    match th {
        Some(th) => th.concl().dest_equiv().expect("rewrite theorem is an equation").1.clone(),
        None => t.clone(),
    }
}

fn op_args(t: &Term, op: NatOp) -> Option<(&Term, &Term)> {
    match t {
        Term::Op(o, a, b) if *o == op => Some((a, b)),
        _ => None,
    }
}

fn is_chain_of_vars(t: &Term, op: NatOp) -> bool {
    match op_args(t, op) {
        Some((a, b)) => is_chain_of_vars(a, op) && is_chain_of_vars(b, op),
        None => matches!(t, Term::Var(_)),
    }
}

/// `x op y = y op x` with schematic `x`, `y`.
fn is_comm(r: &RewriteRule, op: NatOp) -> bool {
    let (Some((a, b)), Some((c, e))) = (op_args(&r.lhs, op), op_args(&r.rhs, op)) else {
        return false;
    };
    matches!((a, b), (Term::Var(x), Term::Var(y)) if x != y && r.schematic.contains(x) && r.schematic.contains(y))
        && a == e
        && b == c
}

/// `x op (y op z) = (x op y) op z` or its converse, schematic variables.
fn is_assoc(r: &RewriteRule, op: NatOp) -> bool {
    let right_nested = |t: &Term| -> Option<[Term; 3]> {
        let (x, yz) = op_args(t, op)?;
        let (y, z) = op_args(yz, op)?;
        Some([x.clone(), y.clone(), z.clone()])
    };
    let left_nested = |t: &Term| -> Option<[Term; 3]> {
        let (xy, z) = op_args(t, op)?;
        let (x, y) = op_args(xy, op)?;
        Some([x.clone(), y.clone(), z.clone()])
    };
    let vars = |v: &[Term; 3]| {
        v.iter().all(|t| matches!(t, Term::Var(x) if r.schematic.contains(x))) && v[0] != v[1] && v[1] != v[2] && v[0] != v[2]
    };
    let fwd = right_nested(&r.lhs).zip(left_nested(&r.rhs));
    let bwd = left_nested(&r.lhs).zip(right_nested(&r.rhs));
    fwd.or(bwd).is_some_and(|(l, rr)| vars(&l) && l == rr)
}

pub struct Rewriter {
    rules: Vec<RewriteRule>,
    /// Operators whose commutativity and associativity were both supplied;
    /// their chains are sorted by merging instead of ordered rewriting.
    ac: Vec<NatOp>,
    budget: Cell<usize>,
    depth: Cell<usize>,
    fold_numerals: bool,
}

/// Nesting limit for the bottom-up traversal; rules that grow terms
/// without bound hit this before the stack runs out.
const MAX_DEPTH: usize = 200;

impl Rewriter {
    pub fn new(mut rules: Vec<RewriteRule>) -> Rewriter {
        let mut ac = Vec::new();
        for op in [NatOp::Add, NatOp::Mul] {
            let comm = rules.iter().any(|r| is_comm(r, op));
            let assoc = rules.iter().any(|r| is_assoc(r, op));
            if comm && assoc {
                rules.retain(|r| !is_assoc(r, op) && !(r.permutative && is_chain_of_vars(&r.lhs, op)));
                ac.push(op);
            }
        }
        Rewriter { rules, ac, budget: Cell::new(REWRITE_BUDGET), depth: Cell::new(0), fold_numerals: true }
    }

    pub fn with_budget(mut self, n: usize) -> Rewriter {
        self.budget = Cell::new(n);
        self
    }

    pub fn steps_left(&self) -> usize {
        self.budget.get()
    }

    fn spend(&self) -> Result<(), TacticError> {
        let left = self.budget.get();
        if left == 0 {
            return fails("rewrite step budget exceeded");
        }
        self.budget.set(left - 1);
        Ok(())
    }

    /// Rewrites `t` to normal form; `None` when nothing applies.
    pub fn rewrite(&self, t: &Term) -> Result<Option<Thm>, TacticError> {
        self.rewrite_under(t, &mut Vec::new())
    }

    fn rewrite_under(&self, t: &Term, bound: &mut Vec<Arc<str>>) -> Result<Option<Thm>, TacticError> {
        let mut acc: Option<Thm> = None;
        loop {
            let start = result_of(t, &acc);
            for i in 0..start.children().len() {
                let cur = result_of(t, &acc);
                let child = cur.children()[i].clone();
                let pushed = if let Term::Quant(_, x, _) = &cur {
                    bound.push(x.clone());
                    true
                } else {
                    false
                };
                if self.depth.get() >= MAX_DEPTH {
                    return fails("rewriting produced a term that is too deep");
                }
                self.depth.set(self.depth.get() + 1);
                let r = self.rewrite_under(&child, bound);
                self.depth.set(self.depth.get() - 1);
                if pushed {
                    bound.pop();
                }
                if let Some(th) = r? {
                    let step = congr_child(&cur, i, &th)?;
                    acc = then_opt(acc, Some(step))?;
                }
            }
            let cur = result_of(t, &acc);
            match self.rewrite_root(&cur, bound)? {
                Some(step) => {
                    self.spend()?;
                    acc = then_opt(acc, Some(step))?;
                }
                None => return Ok(acc),
            }
        }
    }

    fn rewrite_root(&self, t: &Term, bound: &[Arc<str>]) -> Result<Option<Thm>, TacticError> {
        for r in &self.rules {
            if r.fixed.iter().any(|x| bound.contains(x)) {
                continue;
            }
            let Some(sigma) = match_term(&r.lhs, t, &r.schematic) else {
                continue;
            };
            if r.permutative {
                let out = r.rhs.subst(&sigma);
                if out >= *t {
                    continue;
                }
            }
            let th = d::inst(&sigma, &r.thm)?;
            if !th.concl().dest_equiv().is_some_and(|(l, _)| l.alpha_eq(t)) {
                continue;
            }
            return Ok(Some(th));
        }
        if let Term::Op(op, ..) = t {
            if self.ac.contains(op) {
                if let Some(th) = arith::ac_step(*op, t)? {
                    return Ok(Some(th));
                }
            }
        }
        if self.fold_numerals {
            if let Some(th) = arith::fold_numerals(t)? {
                return Ok(Some(th));
            }
        }
        Ok(None)
    }
}
