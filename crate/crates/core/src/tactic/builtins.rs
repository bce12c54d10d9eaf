//! Built-in tactics, theorem tactics and tacticals.

use std::sync::Arc;

use crate::kernel::derived as d;
use std::collections::BTreeSet;

use crate::kernel::term::{fresh_var, match_term, Conn, Quant, Sort, Term, Var};
use crate::kernel::{TheoremStore, Thm};

use super::arith;
use super::conv::{result_of, rules_of_thm, rules_of_thms, RewriteRule, Rewriter};
use super::goal::Goal;
use super::metis;
use super::types::TacticType as T;
use super::value::{
    all_tac, fails, no_tac, orelse, read_nat, read_prop, repeat, then, then_nth, Outcome, Tactic, TacticError,
    TacticValue, ThmTactic,
};

/// Upper bound on successful applications under `rpt`.
pub const REPEAT_LIMIT: usize = 500;

/// Lemmas every simplifier call uses in addition to the supplied ones.
pub const BASIC_SIMP: &[&str] = &[
    "AND_CLAUSES",
    "OR_CLAUSES",
    "IMP_CLAUSES",
    "NOT_CLAUSES",
    "EQ_CLAUSES",
    "REFL_CLAUSE",
    "FORALL_SIMP",
    "EXISTS_SIMP",
    "ZERO_ADD",
    "ADD_0",
    "ZERO_MULT",
    "MULT_0",
    "MULT_LEFT_1",
    "MULT_RIGHT_1",
    "INV_SUC_EQ",
    "NOT_SUC",
    "SUC_NOT",
    "LESS_REFL",
    "LESS_EQ_REFL",
    "NOT_LESS_0",
    "ZERO_LESS_EQ",
    "LESS_0",
    "LESS_MONO_EQ",
    "LESS_EQ_MONO",
    "EQ_ADD_RCANCEL",
    "EQ_ADD_LCANCEL",
];

/// The basic simplification set read from `store`; missing names are skipped.
pub fn basic_rules(store: &TheoremStore) -> Vec<RewriteRule> {
    let mut out = Vec::new();
    for name in BASIC_SIMP {
        if let Ok(th) = d::lemma(store, name) {
            out.extend(rules_of_thm(&th).unwrap_or_default());
        }
    }
    out
}

/// `spec_all` plus every variable free in the conclusion but not in the
/// hypotheses: the variables a match may instantiate.
fn spec_schematic(th: &Thm) -> Result<(Thm, BTreeSet<Var>), TacticError> {
    let (spec, _) = d::spec_all(th)?;
    let mut hyp_vars = BTreeSet::new();
    for h in spec.hyps() {
        hyp_vars.extend(h.free_vars());
    }
    let vars = spec.concl().free_vars().into_iter().filter(|v| !hyp_vars.contains(v)).collect();
    Ok((spec, vars))
}

fn fresh(base: &str, g: &Goal, extra: &[&Term]) -> Var {
    fresh_var(base, g.all_terms().chain(extra.iter().copied()))
}

fn mk_imp(a: Term, b: Term) -> Term {
    Term::mk_imp(a, b).expect("bool operands")
}

fn mk_not(a: Term) -> Term {
    Term::mk_not(a).expect("bool operand")
}

fn tac(f: impl Fn(&Goal) -> Result<Outcome, TacticError> + Send + Sync + 'static) -> Tactic {
    Tactic::new(f)
}

fn subgoal(g: &Goal, concl: Term) -> Goal {
    Goal::with_asms(g.asms.clone(), concl)
}

/// `!x. p` to `p[x'/x]` with `x'` fresh.
pub fn gen_tac() -> Tactic {
    tac(|g| {
        let Term::Quant(Quant::Forall, x, body) = &g.concl else {
            return fails("gen_tac: goal is not universally quantified");
        };
        let v = fresh(x, g, &[]);
        let inner = body.subst1(&Var::nat(x), &Term::Var(v.clone()));
        Ok(Outcome::new(vec![subgoal(g, inner)], move |ths| Ok(d::gen(&v.name, &ths[0])?)))
    })
}

pub fn conj_tac() -> Tactic {
    tac(|g| {
        let Some((a, b)) = g.concl.dest_bin(Conn::And) else {
            return fails("conj_tac: goal is not a conjunction");
        };
        let goals = vec![subgoal(g, a.clone()), subgoal(g, b.clone())];
        Ok(Outcome::new(goals, |ths| Ok(d::conj(&ths[0], &ths[1])?)))
    })
}

pub fn disj1_tac() -> Tactic {
    tac(|g| {
        let Some((a, b)) = g.concl.dest_bin(Conn::Or) else {
            return fails("disj1_tac: goal is not a disjunction");
        };
        let b = b.clone();
        Ok(Outcome::new(vec![subgoal(g, a.clone())], move |ths| Ok(d::disj1(&ths[0], &b)?)))
    })
}

pub fn disj2_tac() -> Tactic {
    tac(|g| {
        let Some((a, b)) = g.concl.dest_bin(Conn::Or) else {
            return fails("disj2_tac: goal is not a disjunction");
        };
        let a = a.clone();
        Ok(Outcome::new(vec![subgoal(g, b.clone())], move |ths| Ok(d::disj2(&a, &ths[0])?)))
    })
}

pub fn eq_tac() -> Tactic {
    tac(|g| {
        let Some((a, b)) = g.concl.dest_bin(Conn::Iff) else {
            return fails("EQ_TAC: goal is not a boolean equivalence");
        };
        let goals = vec![
            subgoal(g, mk_imp(a.clone(), b.clone())),
            subgoal(g, mk_imp(b.clone(), a.clone())),
        ];
        Ok(Outcome::new(goals, |ths| Ok(d::imp_antisym(&ths[0], &ths[1])?)))
    })
}

pub fn ccontr_tac() -> Tactic {
    tac(|g| {
        let c = g.concl.clone();
        let mut sub = Goal::with_asms(g.asms.clone(), Term::False);
        sub.push_asm(mk_not(c.clone()));
        Ok(Outcome::new(vec![sub], move |ths| Ok(d::ccontr(&c, &ths[0])?)))
    })
}

/// Adds the assumption `a` to the goal, splitting conjunctions and
/// existentials and case-splitting disjunctions. The justification yields
/// a theorem that may use `a` as a hypothesis.
fn strip_assume(a: Term) -> Tactic {
    tac(move |g| match &a {
        Term::True => Ok(Outcome::unchanged(g)),
        Term::False => {
            let (c, f) = (g.concl.clone(), a.clone());
            Ok(Outcome::new(vec![], move |_| Ok(d::contr(&c, &d::assume(&f)?)?)))
        }
        Term::Bin(Conn::And, p, q) => {
            let whole = a.clone();
            let o = then(strip_assume((**p).clone()), strip_assume((**q).clone())).apply(g)?;
            let j = o.just;
            Ok(Outcome::new(o.goals, move |ths| {
                let th = j.call(ths)?;
                let both = d::assume(&whole)?;
                let th = d::prove_hyp(&d::conjunct1(&both)?, &th)?;
                Ok(d::prove_hyp(&d::conjunct2(&both)?, &th)?)
            }))
        }
        Term::Quant(Quant::Exists, x, body) => {
            let v = fresh(x, g, &[&a]);
            let inst = body.subst1(&Var::nat(x), &Term::Var(v.clone()));
            let o = strip_assume(inst).apply(g)?;
            let (j, ex) = (o.just, a.clone());
            Ok(Outcome::new(o.goals, move |ths| Ok(d::choose(&v, &d::assume(&ex)?, &j.call(ths)?)?)))
        }
        Term::Bin(Conn::Or, p, q) => {
            let left = strip_assume((**p).clone()).apply(g)?;
            let right = strip_assume((**q).clone()).apply(g)?;
            let n = left.goals.len();
            let mut goals = left.goals;
            goals.extend(right.goals);
            let (jl, jr, whole) = (left.just, right.just, a.clone());
            Ok(Outcome::new(goals, move |ths| {
                let l = jl.call(&ths[..n])?;
                let r = jr.call(&ths[n..])?;
                Ok(d::disj_cases(&d::assume(&whole)?, &l, &r)?)
            }))
        }
        _ => {
            let mut sub = g.clone();
            sub.push_asm(a.clone());
            Ok(Outcome::new(vec![sub], |ths| Ok(ths[0].clone())))
        }
    })
}

pub fn strip_tac() -> Tactic {
    tac(|g| match &g.concl {
        Term::Quant(Quant::Forall, ..) => gen_tac().apply(g),
        Term::Bin(Conn::And, ..) => conj_tac().apply(g),
        Term::Bin(Conn::Imp, a, b) => {
            let a = (**a).clone();
            let o = strip_assume(a.clone()).apply(&subgoal(g, (**b).clone()))?;
            let j = o.just;
            Ok(Outcome::new(o.goals, move |ths| Ok(d::disch(&a, &j.call(ths)?)?)))
        }
        Term::Not(a) => {
            let a = (**a).clone();
            let o = strip_assume(a.clone()).apply(&subgoal(g, Term::False))?;
            let j = o.just;
            Ok(Outcome::new(o.goals, move |ths| Ok(d::not_intro(&d::disch(&a, &j.call(ths)?)?)?)))
        }
        _ => fails("strip_tac: nothing to strip"),
    })
}

pub fn decide_tac() -> Tactic {
    tac(|g| Ok(Outcome::proved(arith::decide(&g.asms, &g.concl)?)))
}

/// Rewrites `g.concl` with `rules`; closes the goal when it becomes `T`.
fn rewrite_concl(g: &Goal, rules: Vec<RewriteRule>) -> Result<Outcome, TacticError> {
    if g.concl == Term::True {
        return Ok(Outcome::proved(d::truth()?));
    }
    let Some(eq) = Rewriter::new(rules).rewrite(&g.concl)? else {
        return Ok(Outcome::unchanged(g));
    };
    let back = d::sym(&eq)?;
    let c = result_of(&g.concl, &Some(eq));
    if c == Term::True {
        return Ok(Outcome::proved(d::eq_mp(&back, &d::truth()?)?));
    }
    Ok(Outcome::new(vec![subgoal(g, c)], move |ths| Ok(d::eq_mp(&back, &ths[0])?)))
}

fn asm_rules(ths: &[Thm]) -> Vec<RewriteRule> {
    ths.iter().flat_map(|th| rules_of_thm(th).unwrap_or_default()).collect()
}

/// `simp thms`: rewrites the conclusion with `thms`, the assumptions and
/// the basic set.
pub fn simp(thms: Vec<Thm>, basic: Arc<Vec<RewriteRule>>) -> Tactic {
    tac(move |g| {
        let mut rules = rules_of_thms(&thms)?;
        let asms = g.asms.iter().map(d::assume).collect::<Result<Vec<_>, _>>()?;
        rules.extend(asm_rules(&asms));
        rules.extend(basic.iter().cloned());
        rewrite_concl(g, rules)
    })
}

/// `rw thms`: rewrites the conclusion with `thms` and the basic set, then
/// strips the result.
pub fn rw(thms: Vec<Thm>, basic: Arc<Vec<RewriteRule>>) -> Tactic {
    let rewrite = tac(move |g| {
        let mut rules = rules_of_thms(&thms)?;
        rules.extend(basic.iter().cloned());
        rewrite_concl(g, rules)
    });
    then(rewrite, repeat(strip_tac(), REPEAT_LIMIT))
}

/// `fs thms`: rewrites each assumption with the others, then the
/// conclusion with all of them. An assumption that becomes `F` closes the
/// goal; one that becomes `T` is dropped.
pub fn fs(thms: Vec<Thm>, basic: Arc<Vec<RewriteRule>>) -> Tactic {
    tac(move |g| {
        let supplied = rules_of_thms(&thms)?;
        // facts[i]: |- asm_i' with hypotheses among the original assumptions
        let mut facts: Vec<Thm> = g.asms.iter().map(d::assume).collect::<Result<_, _>>()?;
        if g.concl == Term::True {
            return Ok(Outcome::proved(d::truth()?));
        }
        if let Some(f) = facts.iter().find(|f| *f.concl() == Term::False) {
            return Ok(Outcome::proved(d::contr(&g.concl, f)?));
        }
        let mut changed = false;
        for i in 0..facts.len() {
            let mut rules = supplied.clone();
            for (j, f) in facts.iter().enumerate() {
                if j != i {
                    rules.extend(rules_of_thm(f).unwrap_or_default());
                }
            }
            rules.extend(basic.iter().cloned());
            let Some(eq) = Rewriter::new(rules).rewrite(facts[i].concl())? else {
                continue;
            };
            changed = true;
            facts[i] = d::eq_mp(&eq, &facts[i])?;
            if *facts[i].concl() == Term::False {
                return Ok(Outcome::proved(d::contr(&g.concl, &facts[i])?));
            }
        }
        let kept: Vec<Thm> = facts.iter().filter(|f| *f.concl() != Term::True).cloned().collect();
        let mut rules = supplied.clone();
        rules.extend(asm_rules(&kept));
        rules.extend(basic.iter().cloned());
        let concl_eq = Rewriter::new(rules).rewrite(&g.concl)?;
        if !changed && concl_eq.is_none() {
            return Ok(Outcome::unchanged(g));
        }
        let back = match &concl_eq {
            Some(eq) => Some(d::sym(eq)?),
            None => None,
        };
        let c = result_of(&g.concl, &concl_eq);
        let restore = move |th: Thm| -> Result<Thm, TacticError> {
            let mut th = match &back {
                Some(b) => d::eq_mp(b, &th)?,
                None => th,
            };
            for f in &facts {
                th = d::prove_hyp(f, &th)?;
            }
            Ok(th)
        };
        if c == Term::True {
            return Ok(Outcome::proved(restore(d::truth()?)?));
        }
        let mut sub = Goal::with_asms(Vec::new(), c);
        for f in &kept {
            sub.push_asm(f.concl().clone());
        }
        Ok(Outcome::new(vec![sub], move |ths| restore(ths[0].clone())))
    })
}

pub fn assume_tac(th: Thm) -> Tactic {
    tac(move |g| {
        let mut sub = g.clone();
        sub.push_asm(th.concl().clone());
        let th = th.clone();
        Ok(Outcome::new(vec![sub], move |ths| Ok(d::prove_hyp(&th, &ths[0])?)))
    })
}

pub fn strip_assume_tac(th: Thm) -> Tactic {
    tac(move |g| {
        let o = strip_assume(th.concl().clone()).apply(g)?;
        let (j, th) = (o.just, th.clone());
        Ok(Outcome::new(o.goals, move |ths| Ok(d::prove_hyp(&th, &j.call(ths)?)?)))
    })
}

pub fn mp_tac(th: Thm) -> Tactic {
    tac(move |g| {
        let sub = subgoal(g, mk_imp(th.concl().clone(), g.concl.clone()));
        let th = th.clone();
        Ok(Outcome::new(vec![sub], move |ths| Ok(d::mp(&ths[0], &th)?)))
    })
}

/// Splits `a1 ==> ... ==> an ==> c` into antecedents and conclusion.
fn dest_imps(t: &Term) -> (Vec<Term>, Term) {
    let mut ants = Vec::new();
    let mut cur = t.clone();
    while let Some((a, b)) = cur.dest_imp() {
        ants.push(a.clone());
        cur = b.clone();
    }
    (ants, cur)
}

/// Backward chaining: matches the conclusion of `th` against the goal and
/// leaves its instantiated antecedents, existentially quantifying
/// variables the match does not fix.
pub fn irule(th: Thm) -> Tactic {
    tac(move |g| {
        let (spec, vars) = spec_schematic(&th)?;
        let (ants, c) = dest_imps(spec.concl());
        let Some(mut sigma) = match_term(&c, &g.concl, &vars) else {
            return fails(format!("irule: `{c}` does not match the goal"));
        };
        let mut ex_vars = Vec::new();
        for v in &vars {
            if !sigma.contains_key(v) && ants.iter().any(|a| a.has_free(v)) {
                if v.sort != Sort::Nat {
                    return fails(format!("irule: cannot instantiate `{}`", v.name));
                }
                let fv = fresh(&v.name, g, &[]);
                let fv = if ex_vars.contains(&fv) {
                    let all: Vec<Term> = ex_vars.iter().cloned().map(Term::Var).collect();
                    fresh_var(&v.name, g.all_terms().chain(all.iter()))
                } else {
                    fv
                };
                sigma.insert(v.clone(), Term::Var(fv.clone()));
                ex_vars.push(fv);
            }
        }
        let imp = d::inst(&sigma, &spec)?;
        let ants: Vec<Term> = ants.iter().map(|a| a.subst(&sigma)).collect();
        if ants.is_empty() {
            return Ok(Outcome::proved(imp));
        }
        let body = ants[1..]
            .iter()
            .fold(ants[0].clone(), |acc, a| Term::mk_and(acc, a.clone()).expect("bool"));
        let mut layers = vec![body.clone()];
        for v in ex_vars.iter().rev() {
            let inner = layers.last().expect("non-empty").clone();
            layers.push(Term::mk_exists(&v.name, inner).expect("bool"));
        }
        layers.reverse(); // layers[0] is the full existential, layers[k] the body
        let sub = subgoal(g, layers[0].clone());
        let n = ants.len();
        Ok(Outcome::new(vec![sub], move |ths| {
            let b = d::assume(&body)?;
            let mut parts = Vec::new();
            let mut cur = b;
            for _ in 1..n {
                parts.push(d::conjunct2(&cur)?);
                cur = d::conjunct1(&cur)?;
            }
            parts.push(cur);
            parts.reverse();
            let mut out = imp.clone();
            for p in &parts {
                out = d::mp(&out, p)?;
            }
            for (i, v) in ex_vars.iter().enumerate().rev() {
                let ex = if i == 0 { ths[0].clone() } else { d::assume(&layers[i])? };
                out = d::choose(v, &ex, &out)?;
            }
            if ex_vars.is_empty() {
                out = d::prove_hyp(&ths[0], &out)?;
            }
            Ok(out)
        }))
    })
}

/// Forward chaining: adds the consequences of `th` whose antecedent
/// matches an assumption.
pub fn imp_res_tac(th: Thm) -> Tactic {
    tac(move |g| {
        let (spec, vars) = spec_schematic(&th)?;
        let Some((ant, _)) = spec.concl().dest_imp() else {
            return Ok(Outcome::unchanged(g));
        };
        let mut facts = Vec::new();
        for a in &g.asms {
            let Some(sigma) = match_term(ant, a, &vars) else { continue };
            let fact = d::mp(&d::inst(&sigma, &spec)?, &d::assume(a)?)?;
            let rest: Vec<Var> = d::free_vars_ordered(fact.concl())
                .into_iter()
                .filter(|v| v.sort == Sort::Nat && vars.contains(v) && !sigma.contains_key(v))
                .collect();
            let fact = d::gen_list(&rest, &fact)?;
            if !g.has_asm(fact.concl()) && !facts.iter().any(|f: &Thm| f.concl().alpha_eq(fact.concl())) {
                facts.push(fact);
            }
        }
        if facts.is_empty() {
            return Ok(Outcome::unchanged(g));
        }
        let mut sub = g.clone();
        for f in &facts {
            sub.push_asm(f.concl().clone());
        }
        Ok(Outcome::new(vec![sub], move |ths| {
            let mut out = ths[0].clone();
            for f in &facts {
                out = d::prove_hyp(f, &out)?;
            }
            Ok(out)
        }))
    })
}

fn without(g: &Goal, i: usize) -> Goal {
    let mut asms = g.asms.clone();
    asms.remove(i);
    Goal::with_asms(asms, g.concl.clone())
}

/// Applies `ttac` to the most recent assumption it succeeds on, removing it.
pub fn first_x_assum(ttac: ThmTactic) -> Tactic {
    tac(move |g| {
        for i in (0..g.asms.len()).rev() {
            let t = ttac.to_tactic(d::assume(&g.asms[i])?)?;
            if let Ok(o) = t.apply(&without(g, i)) {
                return Ok(o);
            }
        }
        fails("first_x_assum: no assumption works")
    })
}

/// Like [`first_x_assum`] but keeps the assumption.
pub fn first_assum(ttac: ThmTactic) -> Tactic {
    tac(move |g| {
        for a in g.asms.iter().rev() {
            if let Ok(o) = ttac.to_tactic(d::assume(a)?)?.apply(g) {
                return Ok(o);
            }
        }
        fails("first_assum: no assumption works")
    })
}

/// Removes the most recent assumption and passes it to `ttac`.
pub fn pop_assum(ttac: ThmTactic) -> Tactic {
    tac(move |g| {
        let Some(last) = g.asms.last() else {
            return fails("pop_assum: no assumptions");
        };
        ttac.to_tactic(d::assume(last)?)?.apply(&without(g, g.asms.len() - 1))
    })
}

/// Removes the most recent assumption matching the quoted pattern (free
/// variables of the pattern are wildcards) and passes it to `ttac`.
pub fn qpat_x_assum(q: Arc<str>, ttac: ThmTactic) -> Tactic {
    tac(move |g| {
        let pat = read_prop(&q, g)?;
        let schematic = pat.free_vars();
        for i in (0..g.asms.len()).rev() {
            if match_term(&pat, &g.asms[i], &schematic).is_some() {
                return ttac.to_tactic(d::assume(&g.asms[i])?)?.apply(&without(g, i));
            }
        }
        fails(format!("qpat_x_assum: no assumption matches `{pat}`"))
    })
}

/// Specializes the outermost quantifiers of `th` with the quoted terms.
fn qspecl(qs: Vec<Arc<str>>, ttac: ThmTactic, th: Thm) -> Tactic {
    tac(move |g| {
        let mut cur = th.clone();
        for q in &qs {
            let t = read_nat(q, g)?;
            cur = d::spec(&t, &cur)?;
        }
        ttac.to_tactic(cur)?.apply(g)
    })
}

pub fn qexists_tac(q: Arc<str>) -> Tactic {
    tac(move |g| {
        let Term::Quant(Quant::Exists, x, body) = &g.concl else {
            return fails("qexists_tac: goal is not existential");
        };
        let w = read_nat(&q, g)?;
        let inst = body.subst1(&Var::nat(x), &w);
        let ex = g.concl.clone();
        Ok(Outcome::new(vec![subgoal(g, inst)], move |ths| Ok(d::exists(&ex, &w, &ths[0])?)))
    })
}

/// Reads a quotation naming a variable. If the variable is not free but
/// bound by the goal's outer universal quantifiers, those quantifiers are
/// stripped first.
fn with_variable(q: Arc<str>, name: &'static str, k: fn(&Goal, Var) -> Result<Outcome, TacticError>) -> Tactic {
    tac(move |g| {
        let t = read_nat(&q, g)?;
        let Term::Var(v) = t else {
            return fails(format!("{name}: `{t}` is not a variable"));
        };
        if g.all_terms().any(|a| a.has_free(&v)) {
            return k(g, v);
        }
        let mut cur = &g.concl;
        let mut depth = 0;
        while let Term::Quant(Quant::Forall, x, body) = cur {
            depth += 1;
            if **x == *v.name {
                let mut strip = gen_tac();
                for _ in 1..depth {
                    strip = then(strip, gen_tac());
                }
                let again = with_variable(q.clone(), name, k);
                return then(strip, again).apply(g);
            }
            cur = body;
        }
        fails(format!("{name}: `{}` does not occur in the goal", v.name))
    })
}

/// Moves the assumptions mentioning `v` into the conclusion as antecedents.
/// Returns the remaining assumptions, the moved ones and the new conclusion.
fn generalize(g: &Goal, v: &Var) -> (Vec<Term>, Vec<Term>, Term) {
    let (moved, kept): (Vec<Term>, Vec<Term>) = g.asms.iter().cloned().partition(|a| a.has_free(v));
    let concl = moved.iter().rev().fold(g.concl.clone(), |acc, a| mk_imp(a.clone(), acc));
    (kept, moved, concl)
}

/// `|- !x. P ==> P[SUC x]` steps back to the original goal.
fn finish_induction(base: &Thm, step: &Thm, v: &Var, moved: &[Term]) -> Result<Thm, TacticError> {
    let all = d::induct(base, step)?;
    let mut th = d::spec(&Term::Var(v.clone()), &all)?;
    for a in moved {
        th = d::mp(&th, &d::assume(a)?)?;
    }
    Ok(th)
}

fn induct_core(g: &Goal, v: Var) -> Result<Outcome, TacticError> {
    let (kept, moved, p) = generalize(g, &v);
    let zero = p.subst1(&v, &Term::Zero);
    let sv = Term::mk_suc(Term::Var(v.clone())).expect("nat");
    let step_concl = p.subst1(&v, &sv);
    let base = Goal::with_asms(kept.clone(), zero);
    let mut step = Goal::with_asms(kept, step_concl);
    step.push_asm(p.clone());
    Ok(Outcome::new(vec![base, step], move |ths| {
        let s = d::gen(&v.name, &d::disch(&p, &ths[1])?)?;
        finish_induction(&ths[0], &s, &v, &moved)
    }))
}

fn cases_core(g: &Goal, v: Var) -> Result<Outcome, TacticError> {
    let (_, moved, p) = generalize(g, &v);
    let v2 = fresh(&format!("{}'", v.name), g, &[]);
    let sv2 = Term::mk_suc(Term::Var(v2.clone())).expect("nat");
    let for_zero = |t: &Term| t.subst1(&v, &Term::Zero);
    let for_suc = |t: &Term| t.subst1(&v, &sv2);
    let base = Goal::with_asms(g.asms.iter().map(for_zero).collect(), for_zero(&g.concl));
    let step = Goal::with_asms(g.asms.iter().map(for_suc).collect(), for_suc(&g.concl));
    let (m0, ms): (Vec<Term>, Vec<Term>) = (moved.iter().map(for_zero).collect(), moved.iter().map(for_suc).collect());
    Ok(Outcome::new(vec![base, step], move |ths| {
        let mut b = ths[0].clone();
        for a in m0.iter().rev() {
            b = d::disch(a, &b)?;
        }
        let mut s = ths[1].clone();
        for a in ms.iter().rev() {
            s = d::disch(a, &s)?;
        }
        let p_v2 = p.subst1(&v, &Term::Var(v2.clone()));
        let s = d::gen(&v2.name, &d::disch(&p_v2, &s)?)?;
        finish_induction(&b, &s, &v, &moved)
    }))
}

pub fn induct_on(q: Arc<str>) -> Tactic {
    with_variable(q, "Induct_on", induct_core)
}

pub fn cases_on(q: Arc<str>) -> Tactic {
    with_variable(q, "Cases_on", cases_core)
}

/// `THEN1 t1 t2`: `t2` must solve the first subgoal of `t1`.
pub fn then1(t1: Tactic, t2: Tactic) -> Tactic {
    let solve = tac(move |g| {
        let o = t2.apply(g)?;
        if !o.goals.is_empty() {
            return fails("THEN1: the first subgoal was not solved");
        }
        Ok(o)
    });
    then_nth(t1, 1, solve)
}

fn v_tac(t: Tactic) -> TacticValue {
    TacticValue::Tac(t)
}

fn v_thm_tac(f: fn(Thm) -> Tactic) -> TacticValue {
    ThmTactic::new(move |th| Ok(f(th))).into_value()
}

fn v_thmlist_tac(basic: &Arc<Vec<RewriteRule>>, f: fn(Vec<Thm>, Arc<Vec<RewriteRule>>) -> Tactic) -> TacticValue {
    let basic = basic.clone();
    TacticValue::fun(T::ThmListTac, move |v| Ok(TacticValue::Tac(f(v.into_thms()?, basic.clone()))))
}

fn v_tac_tac(f: fn(Tactic) -> Tactic) -> TacticValue {
    TacticValue::fun(T::TacTac, move |v| Ok(TacticValue::Tac(f(v.into_tac()?))))
}

fn v_quot_tac(f: fn(Arc<str>) -> Tactic) -> TacticValue {
    TacticValue::fun(T::QuotTac, move |v| Ok(TacticValue::Tac(f(v.into_quot()?))))
}

fn v_thmtac_tac(f: fn(ThmTactic) -> Tactic) -> TacticValue {
    TacticValue::fun(T::ThmTacTac, move |v| Ok(TacticValue::Tac(f(v.into_thm_tactic()?))))
}

fn v_tac_tac_tac(f: fn(Tactic, Tactic) -> Tactic) -> TacticValue {
    TacticValue::fun(T::TacTacTac, move |a| {
        let a = a.into_tac()?;
        Ok(TacticValue::fun(T::TacTac, move |b| Ok(TacticValue::Tac(f(a.clone(), b.into_tac()?)))))
    })
}

fn v_quot_thmtac_tac(f: fn(Arc<str>, ThmTactic) -> Tactic) -> TacticValue {
    TacticValue::fun(T::QuotThmTacTac, move |q| {
        let q = q.into_quot()?;
        Ok(TacticValue::fun(T::ThmTacTac, move |t| Ok(TacticValue::Tac(f(q.clone(), t.into_thm_tactic()?)))))
    })
}

/// `ty` is `QUOT_THMTAC_THM_TAC` or `QUOTLIST_THMTAC_THM_TAC`.
fn v_spec_then(ty: T) -> TacticValue {
    TacticValue::fun(ty, move |q| {
        let qs = match q {
            TacticValue::Quot(q) => vec![q],
            other => other.into_quots()?,
        };
        Ok(TacticValue::fun(T::ThmTacThmTac, move |t| {
            let ttac = t.into_thm_tactic()?;
            let qs = qs.clone();
            Ok(ThmTactic::new(move |th| Ok(qspecl(qs.clone(), ttac.clone(), th))).into_value())
        }))
    })
}

/// Every built-in with its value. Names are unique.
pub fn builtins(store: &TheoremStore) -> Vec<(&'static str, TacticValue)> {
    let basic = Arc::new(basic_rules(store));
    vec![
        ("all_tac", v_tac(all_tac())),
        ("NO_TAC", v_tac(no_tac())),
        ("gen_tac", v_tac(gen_tac())),
        ("strip_tac", v_tac(strip_tac())),
        ("conj_tac", v_tac(conj_tac())),
        ("disj1_tac", v_tac(disj1_tac())),
        ("disj2_tac", v_tac(disj2_tac())),
        ("EQ_TAC", v_tac(eq_tac())),
        ("CCONTR_TAC", v_tac(ccontr_tac())),
        ("DECIDE_TAC", v_tac(decide_tac())),
        ("fs", v_thmlist_tac(&basic, fs)),
        ("rw", v_thmlist_tac(&basic, rw)),
        ("simp", v_thmlist_tac(&basic, simp)),
        ("metis_tac", v_thmlist_tac(&basic, metis::metis_tac)),
        ("assume_tac", v_thm_tac(assume_tac)),
        ("strip_assume_tac", v_thm_tac(strip_assume_tac)),
        ("mp_tac", v_thm_tac(mp_tac)),
        ("irule", v_thm_tac(irule)),
        ("imp_res_tac", v_thm_tac(imp_res_tac)),
        ("rpt", v_tac_tac(|t| repeat(t, REPEAT_LIMIT))),
        ("TRY", v_tac_tac(|t| orelse(t, all_tac()))),
        ("Induct_on", v_quot_tac(induct_on)),
        ("Cases_on", v_quot_tac(cases_on)),
        ("qexists_tac", v_quot_tac(qexists_tac)),
        ("first_x_assum", v_thmtac_tac(first_x_assum)),
        ("first_assum", v_thmtac_tac(first_assum)),
        ("pop_assum", v_thmtac_tac(pop_assum)),
        ("THEN1", v_tac_tac_tac(then1)),
        ("qpat_x_assum", v_quot_thmtac_tac(qpat_x_assum)),
        ("qspec_then", v_spec_then(T::QuotThmTacThmTac)),
        ("qspecl_then", v_spec_then(T::QuotListThmTacThmTac)),
    ]
}

/// Implementations available to custom declarations by name.
pub fn custom_catalog(name: &str) -> Option<TacticValue> {
    match name {
        "REAL_ASM_ARITH_TAC" | "ARITH_TAC" | "ASM_ARITH_TAC" | "DECIDE_TAC" | "intLib.ARITH_TAC" => {
            Some(v_tac(decide_tac()))
        }
        _ => None,
    }
}
