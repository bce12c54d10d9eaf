//! Depth-bounded natural-deduction search.
//!
//! Goals are decomposed by introduction rules; atoms are closed by a
//! matching fact, by backward chaining through implications, by case
//! analysis on a disjunctive fact, or by contradiction. Both the depth and
//! the number of explored nodes are bounded.

use std::cell::Cell;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::kernel::derived as d;
use crate::kernel::term::{fresh_var, match_term, Conn, Quant, Subst, Term, Var};
use crate::kernel::Thm;

use super::conv::{result_of, rules_of_thms, RewriteRule, Rewriter};
use super::goal::Goal;
use super::value::{fails, Outcome, Tactic, TacticError};

pub const DEFAULT_DEPTH: usize = 8;
pub const NODE_BUDGET: usize = 20_000;

/// A usable fact `|- a1 ==> ... ==> an ==> c` with schematic variables.
#[derive(Clone)]
struct Fact {
    th: Thm,
    vars: BTreeSet<Var>,
    ants: Vec<Term>,
    concl: Term,
    /// The last antecedent comes from a negated conclusion `~p`.
    neg_tail: bool,
}

impl Fact {
    fn new(th: &Thm) -> Result<Fact, TacticError> {
        let (spec, _) = d::spec_all(th)?;
        let mut hyp_vars = BTreeSet::new();
        for h in spec.hyps() {
            hyp_vars.extend(h.free_vars());
        }
        let vars = spec.concl().free_vars().into_iter().filter(|v| !hyp_vars.contains(v)).collect();
        let mut ants = Vec::new();
        let mut cur = spec.concl().clone();
        while let Some((a, b)) = cur.dest_imp() {
            ants.push(a.clone());
            cur = b.clone();
        }
        let mut neg_tail = false;
        if let Term::Not(p) = &cur {
            if **p != Term::False {
                ants.push((**p).clone());
                cur = Term::False;
                neg_tail = true;
            }
        }
        Ok(Fact { th: spec, vars, ants, concl: cur, neg_tail })
    }

    fn is_ground(&self) -> bool {
        self.vars.is_empty()
    }
}

struct Search {
    nodes: Cell<usize>,
    budget: usize,
}

type Found = Result<Option<Thm>, TacticError>;

fn mk_not(t: &Term) -> Term {
    Term::mk_not(t.clone()).expect("bool")
}

impl Search {
    fn tick(&self) -> Result<(), TacticError> {
        let n = self.nodes.get() + 1;
        if n > self.budget {
            return fails("metis_tac: search bound exceeded");
        }
        self.nodes.set(n);
        Ok(())
    }

    /// Adds `th` to `facts`, splitting conjunctions.
    fn absorb(&self, th: Thm, facts: &mut Vec<Fact>) -> Result<(), TacticError> {
        if th.concl().dest_bin(Conn::And).is_some() {
            self.absorb(d::conjunct1(&th)?, facts)?;
            return self.absorb(d::conjunct2(&th)?, facts);
        }
        if th.concl().dest_bin(Conn::Iff).is_some() {
            let (ab, ba) = d::eq_imp_rule(&th)?;
            facts.push(Fact::new(&ab)?);
            facts.push(Fact::new(&ba)?);
        }
        facts.push(Fact::new(&th)?);
        Ok(())
    }

    fn prove(&self, facts: &[Fact], goal: &Term, depth: usize) -> Found {
        self.tick()?;
        for f in facts {
            if f.is_ground() && f.th.concl().alpha_eq(goal) {
                return Ok(Some(f.th.clone()));
            }
        }
        if let Some(bot) = self.ground_contradiction(facts)? {
            return Ok(Some(d::contr(goal, &bot)?));
        }
        match goal {
            Term::True => return Ok(Some(d::truth()?)),
            Term::Bin(Conn::And, a, b) => {
                let Some(x) = self.prove(facts, a, depth)? else { return Ok(None) };
                let Some(y) = self.prove(facts, b, depth)? else { return Ok(None) };
                return Ok(Some(d::conj(&x, &y)?));
            }
            Term::Bin(Conn::Imp, a, b) => {
                let mut more = facts.to_vec();
                self.absorb(d::assume(a)?, &mut more)?;
                return Ok(match self.prove(&more, b, depth)? {
                    Some(th) => Some(d::disch(a, &th)?),
                    None => None,
                });
            }
            Term::Not(a) => {
                let mut more = facts.to_vec();
                self.absorb(d::assume(a)?, &mut more)?;
                return Ok(match self.prove(&more, &Term::False, depth)? {
                    Some(th) => Some(d::not_intro(&d::disch(a, &th)?)?),
                    None => None,
                });
            }
            Term::Bin(Conn::Iff, a, b) => {
                let ab = Term::mk_imp((**a).clone(), (**b).clone()).expect("bool");
                let ba = Term::mk_imp((**b).clone(), (**a).clone()).expect("bool");
                let Some(x) = self.prove(facts, &ab, depth)? else { return Ok(None) };
                let Some(y) = self.prove(facts, &ba, depth)? else { return Ok(None) };
                return Ok(Some(d::imp_antisym(&x, &y)?));
            }
            Term::Quant(Quant::Forall, x, body) => {
                let all = facts.iter().flat_map(|f| f.th.hyps().iter().chain([f.th.concl()]));
                let v = fresh_var(x, all.chain([goal]));
                let inner = body.subst1(&Var::nat(x), &Term::Var(v.clone()));
                return Ok(match self.prove(facts, &inner, depth)? {
                    Some(th) => Some(d::gen(&v.name, &th)?),
                    None => None,
                });
            }
            Term::Bin(Conn::Or, a, b) => {
                if let Some(th) = self.prove(facts, a, depth)? {
                    return Ok(Some(d::disj1(&th, b)?));
                }
                if let Some(th) = self.prove(facts, b, depth)? {
                    return Ok(Some(d::disj2(a, &th)?));
                }
            }
            _ => {}
        }
        if depth == 0 {
            return Ok(None);
        }
        if let Some(th) = self.chain(facts, goal, depth)? {
            return Ok(Some(th));
        }
        if let Some(th) = self.split_disjunction(facts, goal, depth)? {
            return Ok(Some(th));
        }
        Ok(None)
    }

    /// `|- F` from a ground fact `F` or a ground pair `p`, `~p`.
    fn ground_contradiction(&self, facts: &[Fact]) -> Found {
        for f in facts {
            if !f.is_ground() {
                continue;
            }
            if f.ants.is_empty() && f.concl == Term::False {
                return Ok(Some(f.th.clone()));
            }
            if let Term::Not(p) = f.th.concl() {
                let pos = facts.iter().find(|g| g.is_ground() && g.ants.is_empty() && g.concl.alpha_eq(p));
                if let Some(pos) = pos {
                    return Ok(Some(d::mp(&d::not_elim(&f.th)?, &pos.th)?));
                }
            }
        }
        Ok(None)
    }

    /// Backward chaining through a fact whose conclusion matches `goal`.
    fn chain(&self, facts: &[Fact], goal: &Term, depth: usize) -> Found {
        for f in facts {
            if f.ants.is_empty() && f.is_ground() {
                continue;
            }
            let Some(first) = match_term(&f.concl, goal, &f.vars) else { continue };
            for sigma in complete(first, f, facts) {
                if let Some(th) = self.discharge(f, sigma, facts, depth)? {
                    return Ok(Some(th));
                }
            }
        }
        Ok(None)
    }

    fn discharge(&self, f: &Fact, sigma: Subst, facts: &[Fact], depth: usize) -> Found {
        {
            let ants: Vec<Term> = f.ants.iter().map(|a| a.subst(&sigma)).collect();
            let mut proofs = Vec::new();
            for a in &ants {
                match self.prove(facts, a, depth - 1)? {
                    Some(th) => proofs.push(th),
                    None => break,
                }
            }
            if proofs.len() != ants.len() {
                return Ok(None);
            }
            let mut th = d::inst(&sigma, &f.th)?;
            for (i, p) in proofs.iter().enumerate() {
                if f.neg_tail && i + 1 == proofs.len() {
                    th = d::not_elim(&th)?;
                }
                th = d::mp(&th, p)?;
            }
            Ok(Some(th))
        }
    }

    /// Case analysis on the first ground disjunctive fact.
    fn split_disjunction(&self, facts: &[Fact], goal: &Term, depth: usize) -> Found {
        let Some(i) = facts.iter().position(|f| f.is_ground() && f.ants.is_empty() && f.concl.dest_bin(Conn::Or).is_some())
        else {
            return Ok(None);
        };
        let (p, q) = facts[i].concl.dest_bin(Conn::Or).expect("disjunction");
        let mut rest: Vec<Fact> = facts.to_vec();
        let disj = rest.remove(i).th;
        let mut left = rest.clone();
        self.absorb(d::assume(p)?, &mut left)?;
        let Some(l) = self.prove(&left, goal, depth - 1)? else { return Ok(None) };
        let mut right = rest;
        self.absorb(d::assume(q)?, &mut right)?;
        let Some(r) = self.prove(&right, goal, depth - 1)? else { return Ok(None) };
        Ok(Some(d::disj_cases(&disj, &l, &r)?))
    }
}

/// Conjuncts of a term.
fn conjuncts(t: &Term, out: &mut Vec<Term>) {
    match t.dest_bin(Conn::And) {
        Some((a, b)) => {
            conjuncts(a, out);
            conjuncts(b, out);
        }
        None => out.push(t.clone()),
    }
}

const MAX_COMPLETIONS: usize = 16;

/// Extensions of `sigma` binding every schematic variable of the
/// antecedents, each found by matching an antecedent conjunct against a
/// ground fact.
fn complete(sigma: Subst, f: &Fact, facts: &[Fact]) -> Vec<Subst> {
    let mut atoms = Vec::new();
    for a in &f.ants {
        conjuncts(a, &mut atoms);
    }
    let mut out = Vec::new();
    extend(sigma, &atoms, f, facts, &mut out);
    out
}

fn extend(sigma: Subst, atoms: &[Term], f: &Fact, facts: &[Fact], out: &mut Vec<Subst>) {
    if out.len() >= MAX_COMPLETIONS {
        return;
    }
    let unbound: BTreeSet<Var> = f.vars.iter().filter(|v| !sigma.contains_key(*v)).cloned().collect();
    let pending = atoms.iter().map(|a| a.subst(&sigma)).find(|a| a.free_vars().iter().any(|v| unbound.contains(v)));
    let Some(atom) = pending else {
        out.push(sigma);
        return;
    };
    for g in facts {
        if !g.is_ground() || !g.ants.is_empty() {
            continue;
        }
        if let Some(more) = match_term(&atom, &g.concl, &unbound) {
            let mut next = sigma.clone();
            next.extend(more);
            extend(next, atoms, f, facts, out);
        }
    }
}

/// Searches for a proof of `g` from its assumptions and `thms`.
pub fn search(g: &Goal, thms: &[Thm], depth: usize, budget: usize) -> Found {
    let s = Search { nodes: Cell::new(0), budget };
    let mut facts = Vec::new();
    for a in &g.asms {
        s.absorb(d::assume(a)?, &mut facts)?;
    }
    for th in thms {
        s.absorb(th.clone(), &mut facts)?;
    }
    if let Some(th) = s.prove(&facts, &g.concl, depth)? {
        return Ok(Some(th));
    }
    // refutation of the negated goal
    let neg = mk_not(&g.concl);
    let mut more = facts.clone();
    s.absorb(d::assume(&neg)?, &mut more)?;
    Ok(match s.prove(&more, &Term::False, depth)? {
        Some(bot) => Some(d::ccontr(&g.concl, &bot)?),
        None => None,
    })
}

/// Rewrites the goal with the assumptions, `thms` and the basic set; the
/// result if this proves it outright.
fn rewrite_closure(g: &Goal, thms: &[Thm], basic: &[RewriteRule]) -> Found {
    let mut all = thms.to_vec();
    for a in &g.asms {
        all.push(d::assume(a)?);
    }
    let mut rules = rules_of_thms(&all)?;
    rules.extend(basic.iter().cloned());
    let Ok(Some(eq)) = Rewriter::new(rules).rewrite(&g.concl) else {
        return Ok(None);
    };
    if result_of(&g.concl, &Some(eq.clone())) != Term::True {
        return Ok(None);
    }
    Ok(Some(d::eq_mp(&d::sym(&eq)?, &d::truth()?)?))
}

pub fn metis_tac(thms: Vec<Thm>, basic: Arc<Vec<RewriteRule>>) -> Tactic {
    Tactic::new(move |g| {
        if let Some(th) = rewrite_closure(g, &thms, &basic)? {
            return Ok(Outcome::proved(th));
        }
        match search(g, &thms, DEFAULT_DEPTH, NODE_BUDGET)? {
            Some(th) => Ok(Outcome::proved(th)),
            None => fails(format!("metis_tac: no proof within depth {DEFAULT_DEPTH}")),
        }
    })
}
