//! The trusted core: theorems can only be produced by [`infer`].
//!
//! Every theorem carries the rule and premises that produced it, so the
//! whole derivation can be re-checked with [`replay`].

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use super::store::TheoremStore;
use super::syntax::parse_term;
use super::term::{Conn, Quant, Sort, Subst, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("kernel: {0}")]
pub struct KernelError(pub String);

fn fail<T>(msg: impl Into<String>) -> Result<T, KernelError> {
    Err(KernelError(msg.into()))
}

/// Primitive inference rules. Arguments that cannot be recovered from the
/// premises are stored in the rule itself.
#[derive(Debug, Clone)]
pub enum Rule {
    /// `{p} |- p`
    Assume(Term),
    /// `A |- q` gives `A - {p} |- p ==> q`
    ImpIntro(Term),
    /// `A |- p ==> q`, `B |- p` gives `A u B |- q`
    ImpElim,
    ConjIntro,
    ConjElimL,
    ConjElimR,
    /// `A |- p` gives `A |- p \/ q`
    DisjIntroL(Term),
    /// `A |- q` gives `A |- p \/ q`
    DisjIntroR(Term),
    /// `A |- p \/ q`, `B |- r`, `C |- r` gives `A u (B - {p}) u (C - {q}) |- r`
    DisjCases,
    /// `A |- p ==> F` gives `A |- ~p`
    NotIntro,
    /// `A |- ~p` gives `A |- p ==> F`
    NotElim,
    /// `A |- F` gives `A |- p`
    Contradiction(Term),
    /// `|- p \/ ~p`
    ExcludedMiddle(Term),
    TruthIntro,
    /// `A |- p ==> q`, `B |- q ==> p` gives `A u B |- p <=> q`
    IffIntro,
    /// `|- t = t` or `|- t <=> t`
    Refl(Term),
    Sym,
    Trans,
    /// `A |- p <=> q`, `B |- p` gives `A u B |- q`
    EqMp,
    /// `A |- a = b` gives `A |- C[a] = C[b]` where the hole may sit under
    /// binders, provided those binders are not free in `A`.
    Congr { context: Term, hole: Var },
    /// `A |- p` gives `A |- !x. p` when `x` is not free in `A`.
    ForallIntro(Arc<str>),
    /// `A |- !x. p` gives `A |- p[t/x]`
    ForallElim(Term),
    /// `A |- p[t/x]` gives `A |- ?x. p`; the argument is `?x. p`.
    ExistsIntro { exists: Term, witness: Term },
    /// `A |- ?x. p`, `B |- q` with `p[v/x]` in `B` gives
    /// `A u (B - {p[v/x]}) |- q` when `v` is fresh.
    ExistsElim(Var),
    /// `A |- P[0/x]`, `B |- !x. P ==> P[SUC x/x]` gives `A u B |- !x. P`
    NatInduction,
    /// Substitution of free variables in hypotheses and conclusion.
    Inst(Subst),
    Axiom(&'static str),
    /// A lemma taken from a [`TheoremStore`].
    StoreLemma(Arc<str>),
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Assume(_) => "ASSUME",
            Rule::ImpIntro(_) => "DISCH",
            Rule::ImpElim => "MP",
            Rule::ConjIntro => "CONJ",
            Rule::ConjElimL => "CONJUNCT1",
            Rule::ConjElimR => "CONJUNCT2",
            Rule::DisjIntroL(_) => "DISJ1",
            Rule::DisjIntroR(_) => "DISJ2",
            Rule::DisjCases => "DISJ_CASES",
            Rule::NotIntro => "NOT_INTRO",
            Rule::NotElim => "NOT_ELIM",
            Rule::Contradiction(_) => "CONTR",
            Rule::ExcludedMiddle(_) => "EXCLUDED_MIDDLE",
            Rule::TruthIntro => "TRUTH",
            Rule::IffIntro => "IMP_ANTISYM",
            Rule::Refl(_) => "REFL",
            Rule::Sym => "SYM",
            Rule::Trans => "TRANS",
            Rule::EqMp => "EQ_MP",
            Rule::Congr { .. } => "CONGR",
            Rule::ForallIntro(_) => "GEN",
            Rule::ForallElim(_) => "SPEC",
            Rule::ExistsIntro { .. } => "EXISTS",
            Rule::ExistsElim(_) => "CHOOSE",
            Rule::NatInduction => "INDUCT",
            Rule::Inst(_) => "INST",
            Rule::Axiom(_) => "AXIOM",
            Rule::StoreLemma(_) => "LEMMA",
        }
    }
}

#[derive(Debug)]
pub struct Proof {
    pub rule: Rule,
    pub premises: Vec<Thm>,
}

/// `hyps |- concl`. Fields are private: the only constructor is [`infer`].
#[derive(Clone)]
pub struct Thm {
    hyps: Arc<Vec<Term>>,
    concl: Term,
    proof: Arc<Proof>,
}

impl Thm {
    pub fn hyps(&self) -> &[Term] {
        &self.hyps
    }

    pub fn concl(&self) -> &Term {
        &self.concl
    }

    pub fn proof(&self) -> &Proof {
        &self.proof
    }

    /// Same hypotheses (as sets, up to alpha) and alpha-equal conclusions.
    pub fn same_as(&self, other: &Thm) -> bool {
        self.concl.alpha_eq(&other.concl)
            && self.hyps.len() == other.hyps.len()
            && self.hyps.iter().all(|h| contains(&other.hyps, h))
    }

    /// Number of distinct proof nodes.
    pub fn proof_size(&self) -> usize {
        let mut seen = HashSet::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if seen.insert(Arc::as_ptr(&t.proof)) {
                stack.extend(t.proof.premises.iter());
            }
        }
        seen.len()
    }
}

impl fmt::Debug for Thm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Thm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.hyps.iter().map(|h| h.to_string()).collect();
        if !hs.is_empty() {
            write!(f, "{} ", hs.join(", "))?;
        }
        write!(f, "|- {}", self.concl)
    }
}

fn contains(hs: &[Term], t: &Term) -> bool {
    hs.iter().any(|h| h.alpha_eq(t))
}

fn union(a: &[Term], b: &[Term]) -> Vec<Term> {
    let mut out = a.to_vec();
    for t in b {
        if !contains(&out, t) {
            out.push(t.clone());
        }
    }
    out
}

fn remove(a: &[Term], t: &Term) -> Vec<Term> {
    a.iter().filter(|h| !h.alpha_eq(t)).cloned().collect()
}

fn free_in_hyps(hs: &[Term], v: &Var) -> bool {
    hs.iter().any(|h| h.has_free(v))
}

fn need_bool(t: &Term) -> Result<(), KernelError> {
    if t.sort() == Sort::Bool {
        Ok(())
    } else {
        fail(format!("`{t}` is not a proposition"))
    }
}

fn premises<const N: usize>(ps: &[Thm]) -> Result<&[Thm; N], KernelError> {
    ps.try_into().map_err(|_| KernelError(format!("expected {N} premises, got {}", ps.len())))
}

struct Axiom {
    name: &'static str,
    text: &'static str,
}

const AXIOMS: &[Axiom] = &[
    Axiom { name: "SUC_INJ", text: "SUC m = SUC n <=> m = n" },
    Axiom { name: "SUC_NONZERO", text: "SUC n <> 0" },
    Axiom { name: "ADD_ZERO", text: "0 + n = n" },
    Axiom { name: "ADD_SUC", text: "SUC m + n = SUC (m + n)" },
    Axiom { name: "MUL_ZERO", text: "0 * n = 0" },
    Axiom { name: "MUL_SUC", text: "SUC m * n = m * n + n" },
    Axiom { name: "LE_DEF", text: "m <= n <=> ?k. m + k = n" },
    Axiom { name: "LT_DEF", text: "m < n <=> SUC m <= n" },
    Axiom { name: "SUM_ZERO", text: "sum 0 = 0" },
    Axiom { name: "SUM_SUC", text: "sum (SUC n) = sum n + SUC n" },
];

/// Names of the arithmetic axioms. Free variables in axioms are schematic.
pub fn axiom_names() -> impl Iterator<Item = &'static str> {
    AXIOMS.iter().map(|a| a.name)
}

pub fn axiom_statement(name: &str) -> Option<Term> {
    AXIOMS
        .iter()
        .find(|a| a.name == name)
        .map(|a| parse_term(a.text).expect("axiom text parses"))
}

fn mk(hyps: Vec<Term>, concl: Term, rule: Rule, prem: &[Thm]) -> Thm {
    Thm {
        hyps: Arc::new(hyps),
        concl,
        proof: Arc::new(Proof { rule, premises: prem.to_vec() }),
    }
}

/// Applies one primitive rule. Fails when a side condition does not hold.
pub fn infer(rule: Rule, prem: &[Thm], store: &TheoremStore) -> Result<Thm, KernelError> {
    let (hyps, concl) = check(&rule, prem, store)?;
    Ok(mk(hyps, concl, rule, prem))
}

fn check(rule: &Rule, prem: &[Thm], store: &TheoremStore) -> Result<(Vec<Term>, Term), KernelError> {
    let sort_err = |e: super::term::SortError| KernelError(e.0);
    match rule {
        Rule::Assume(p) => {
            premises::<0>(prem)?;
            need_bool(p)?;
            Ok((vec![p.clone()], p.clone()))
        }
        Rule::ImpIntro(p) => {
            let [a] = premises::<1>(prem)?;
            need_bool(p)?;
            let c = Term::mk_imp(p.clone(), a.concl.clone()).map_err(sort_err)?;
            Ok((remove(&a.hyps, p), c))
        }
        Rule::ImpElim => {
            let [a, b] = premises::<2>(prem)?;
            let Some((p, q)) = a.concl.dest_imp() else {
                return fail(format!("MP: `{}` is not an implication", a.concl));
            };
            if !p.alpha_eq(&b.concl) {
                return fail(format!("MP: antecedent `{p}` does not match `{}`", b.concl));
            }
            Ok((union(&a.hyps, &b.hyps), q.clone()))
        }
        Rule::ConjIntro => {
            let [a, b] = premises::<2>(prem)?;
            let c = Term::mk_and(a.concl.clone(), b.concl.clone()).map_err(sort_err)?;
            Ok((union(&a.hyps, &b.hyps), c))
        }
        Rule::ConjElimL | Rule::ConjElimR => {
            let [a] = premises::<1>(prem)?;
            let Some((l, r)) = a.concl.dest_bin(Conn::And) else {
                return fail(format!("CONJUNCT: `{}` is not a conjunction", a.concl));
            };
            let c = if matches!(rule, Rule::ConjElimL) { l } else { r };
            Ok((a.hyps.to_vec(), c.clone()))
        }
        Rule::DisjIntroL(q) => {
            let [a] = premises::<1>(prem)?;
            let c = Term::mk_or(a.concl.clone(), q.clone()).map_err(sort_err)?;
            Ok((a.hyps.to_vec(), c))
        }
        Rule::DisjIntroR(p) => {
            let [a] = premises::<1>(prem)?;
            let c = Term::mk_or(p.clone(), a.concl.clone()).map_err(sort_err)?;
            Ok((a.hyps.to_vec(), c))
        }
        Rule::DisjCases => {
            let [a, b, c] = premises::<3>(prem)?;
            let Some((p, q)) = a.concl.dest_bin(Conn::Or) else {
                return fail(format!("DISJ_CASES: `{}` is not a disjunction", a.concl));
            };
            if !b.concl.alpha_eq(&c.concl) {
                return fail("DISJ_CASES: branch conclusions differ");
            }
            let hs = union(&union(&a.hyps, &remove(&b.hyps, p)), &remove(&c.hyps, q));
            Ok((hs, b.concl.clone()))
        }
        Rule::NotIntro => {
            let [a] = premises::<1>(prem)?;
            match a.concl.dest_imp() {
                Some((p, Term::False)) => Ok((a.hyps.to_vec(), Term::mk_not(p.clone()).map_err(sort_err)?)),
                _ => fail(format!("NOT_INTRO: `{}` is not of the form p ==> F", a.concl)),
            }
        }
        Rule::NotElim => {
            let [a] = premises::<1>(prem)?;
            match &a.concl {
                Term::Not(p) => Ok((a.hyps.to_vec(), Term::mk_imp((**p).clone(), Term::False).map_err(sort_err)?)),
                _ => fail(format!("NOT_ELIM: `{}` is not a negation", a.concl)),
            }
        }
        Rule::Contradiction(p) => {
            let [a] = premises::<1>(prem)?;
            need_bool(p)?;
            if a.concl != Term::False {
                return fail("CONTR: premise is not F");
            }
            Ok((a.hyps.to_vec(), p.clone()))
        }
        Rule::ExcludedMiddle(p) => {
            premises::<0>(prem)?;
            let np = Term::mk_not(p.clone()).map_err(sort_err)?;
            Ok((vec![], Term::mk_or(p.clone(), np).map_err(sort_err)?))
        }
        Rule::TruthIntro => {
            premises::<0>(prem)?;
            Ok((vec![], Term::True))
        }
        Rule::IffIntro => {
            let [a, b] = premises::<2>(prem)?;
            match (a.concl.dest_imp(), b.concl.dest_imp()) {
                (Some((p, q)), Some((q2, p2))) if p.alpha_eq(p2) && q.alpha_eq(q2) => {
                    let c = Term::mk_iff(p.clone(), q.clone()).map_err(sort_err)?;
                    Ok((union(&a.hyps, &b.hyps), c))
                }
                _ => fail("IMP_ANTISYM: premises are not converse implications"),
            }
        }
        Rule::Refl(t) => {
            premises::<0>(prem)?;
            Ok((vec![], Term::mk_equiv(t.clone(), t.clone()).map_err(sort_err)?))
        }
        Rule::Sym => {
            let [a] = premises::<1>(prem)?;
            let Some((l, r)) = a.concl.dest_equiv() else {
                return fail(format!("SYM: `{}` is not an equation", a.concl));
            };
            Ok((a.hyps.to_vec(), Term::mk_equiv(r.clone(), l.clone()).map_err(sort_err)?))
        }
        Rule::Trans => {
            let [a, b] = premises::<2>(prem)?;
            match (a.concl.dest_equiv(), b.concl.dest_equiv()) {
                (Some((x, y)), Some((y2, z))) if y.alpha_eq(y2) => {
                    let c = Term::mk_equiv(x.clone(), z.clone()).map_err(sort_err)?;
                    Ok((union(&a.hyps, &b.hyps), c))
                }
                _ => fail(format!("TRANS: `{}` and `{}` do not chain", a.concl, b.concl)),
            }
        }
        Rule::EqMp => {
            let [a, b] = premises::<2>(prem)?;
            match a.concl.dest_bin(Conn::Iff) {
                Some((p, q)) if p.alpha_eq(&b.concl) => Ok((union(&a.hyps, &b.hyps), q.clone())),
                _ => fail(format!("EQ_MP: `{}` does not rewrite `{}`", a.concl, b.concl)),
            }
        }
        Rule::Congr { context, hole } => {
            let [a] = premises::<1>(prem)?;
            let Some((l, r)) = a.concl.dest_equiv() else {
                return fail(format!("CONGR: `{}` is not an equation", a.concl));
            };
            if l.sort() != hole.sort {
                return fail("CONGR: hole sort does not match equation");
            }
            for x in context.binders_over(hole) {
                if free_in_hyps(&a.hyps, &Var::nat(&x)) {
                    return fail(format!("CONGR: bound variable `{x}` is free in hypotheses"));
                }
            }
            let cl = context.replace_capturing(hole, l);
            let cr = context.replace_capturing(hole, r);
            Ok((a.hyps.to_vec(), Term::mk_equiv(cl, cr).map_err(sort_err)?))
        }
        Rule::ForallIntro(x) => {
            let [a] = premises::<1>(prem)?;
            if free_in_hyps(&a.hyps, &Var::nat(x)) {
                return fail(format!("GEN: `{x}` is free in hypotheses"));
            }
            Ok((a.hyps.to_vec(), Term::mk_forall(x, a.concl.clone()).map_err(sort_err)?))
        }
        Rule::ForallElim(t) => {
            let [a] = premises::<1>(prem)?;
            let Some((x, body)) = a.concl.dest_quant(Quant::Forall) else {
                return fail(format!("SPEC: `{}` is not universally quantified", a.concl));
            };
            if t.sort() != Sort::Nat {
                return fail("SPEC: witness must be a nat");
            }
            Ok((a.hyps.to_vec(), body.subst1(&Var::nat(x), t)))
        }
        Rule::ExistsIntro { exists, witness } => {
            let [a] = premises::<1>(prem)?;
            let Some((x, body)) = exists.dest_quant(Quant::Exists) else {
                return fail("EXISTS: target is not existential");
            };
            if witness.sort() != Sort::Nat {
                return fail("EXISTS: witness must be a nat");
            }
            if !body.subst1(&Var::nat(x), witness).alpha_eq(&a.concl) {
                return fail("EXISTS: premise is not an instance of the body");
            }
            Ok((a.hyps.to_vec(), exists.clone()))
        }
        Rule::ExistsElim(v) => {
            let [a, b] = premises::<2>(prem)?;
            let Some((x, body)) = a.concl.dest_quant(Quant::Exists) else {
                return fail("CHOOSE: premise is not existential");
            };
            if v.sort != Sort::Nat {
                return fail("CHOOSE: witness variable must be a nat");
            }
            let inst = body.subst1(&Var::nat(x), &Term::Var(v.clone()));
            let rest = remove(&b.hyps, &inst);
            if a.concl.has_free(v) || b.concl.has_free(v) || free_in_hyps(&rest, v) {
                return fail(format!("CHOOSE: `{}` is not fresh", v.name));
            }
            Ok((union(&a.hyps, &rest), b.concl.clone()))
        }
        Rule::NatInduction => {
            let [base, step] = premises::<2>(prem)?;
            let Some((x, imp)) = step.concl.dest_quant(Quant::Forall) else {
                return fail("INDUCT: step is not universally quantified");
            };
            let Some((p, p_suc)) = imp.dest_imp() else {
                return fail("INDUCT: step is not an implication");
            };
            let xv = Var::nat(x);
            let suc = Term::mk_suc(Term::Var(xv.clone())).map_err(sort_err)?;
            if !p.subst1(&xv, &suc).alpha_eq(p_suc) {
                return fail("INDUCT: step does not go from P[x] to P[SUC x]");
            }
            if !p.subst1(&xv, &Term::Zero).alpha_eq(&base.concl) {
                return fail("INDUCT: base case does not match");
            }
            let c = Term::mk_forall(x, p.clone()).map_err(sort_err)?;
            Ok((union(&base.hyps, &step.hyps), c))
        }
        Rule::Inst(sigma) => {
            let [a] = premises::<1>(prem)?;
            for (v, t) in sigma {
                if v.sort != t.sort() {
                    return fail(format!("INST: `{}` cannot be replaced by `{t}`", v.name));
                }
            }
            let hs = a.hyps.iter().map(|h| h.subst(sigma)).collect::<Vec<_>>();
            Ok((union(&[], &hs), a.concl.subst(sigma)))
        }
        Rule::Axiom(name) => {
            premises::<0>(prem)?;
            match axiom_statement(name) {
                Some(t) => Ok((vec![], t)),
                None => fail(format!("no axiom named {name}")),
            }
        }
        Rule::StoreLemma(name) => {
            premises::<0>(prem)?;
            match store.get(name) {
                Some(t) => Ok((vec![], t.clone())),
                None => fail(format!("no lemma named {name}")),
            }
        }
    }
}

/// Re-derives every node of the proof of `thm` and checks that each step
/// reproduces the recorded theorem. Shared subproofs are checked once.
pub fn replay(thm: &Thm, store: &TheoremStore) -> Result<(), KernelError> {
    let mut done: HashSet<*const Proof> = HashSet::new();
    let mut stack: Vec<(&Thm, bool)> = vec![(thm, false)];
    while let Some((t, expanded)) = stack.pop() {
        let key = Arc::as_ptr(&t.proof);
        if done.contains(&key) {
            continue;
        }
        if !expanded {
            stack.push((t, true));
            for p in &t.proof.premises {
                stack.push((p, false));
            }
            continue;
        }
        let (hyps, concl) = check(&t.proof.rule, &t.proof.premises, store)?;
        let again = mk(hyps, concl, Rule::TruthIntro, &[]);
        if !again.same_as(t) {
            return fail(format!("replay mismatch at {}: `{}`", t.proof.rule.name(), t));
        }
        done.insert(key);
    }
    Ok(())
}

/// Counts rule usage in a proof, for diagnostics.
pub fn rule_histogram(thm: &Thm) -> BTreeMap<&'static str, usize> {
    let mut seen = HashSet::new();
    let mut out = BTreeMap::new();
    let mut stack = vec![thm];
    while let Some(t) = stack.pop() {
        if seen.insert(Arc::as_ptr(&t.proof)) {
            *out.entry(t.proof.rule.name()).or_insert(0) += 1;
            stack.extend(t.proof.premises.iter());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn store() -> TheoremStore {
        TheoremStore::empty()
    }

    #[test]
    fn assume_and_discharge() {
        let s = store();
        let a = infer(Rule::Assume(p("x = 1")), &[], &s).unwrap();
        let d = infer(Rule::ImpIntro(p("x = 1")), &[a], &s).unwrap();
        assert!(d.hyps().is_empty());
        assert_eq!(d.concl().to_string(), "x = 1 ==> x = 1");
        replay(&d, &s).unwrap();
    }

    #[test]
    fn gen_respects_hypotheses() {
        let s = store();
        let a = infer(Rule::Assume(p("x = 1")), &[], &s).unwrap();
        assert!(infer(Rule::ForallIntro("x".into()), std::slice::from_ref(&a), &s).is_err());
        assert!(infer(Rule::ForallIntro("y".into()), &[a], &s).is_ok());
    }

    #[test]
    fn congr_under_binder_requires_closed_hyps() {
        let s = store();
        let h = infer(Rule::Assume(p("x + 0 = x")), &[], &s).unwrap();
        let hole = Var::nat("h");
        let ctx = p("!x. h = h");
        let ctx_rule = Rule::Congr { context: ctx.clone(), hole: hole.clone() };
        assert!(infer(ctx_rule, &[h], &s).is_err());
        let ax = infer(Rule::Axiom("ADD_ZERO"), &[], &s).unwrap();
        let ok = infer(Rule::Congr { context: p("!n. h = 0 + h"), hole }, &[ax], &s).unwrap();
        assert_eq!(ok.concl().to_string(), "(!n. 0 + n = 0 + (0 + n)) <=> (!n. n = 0 + n)");
    }

    #[test]
    fn induction_checks_shape() {
        let s = store();
        let base = infer(Rule::Refl(p("0 = 0").children()[0].clone()), &[], &s).unwrap();
        let n = Term::nat_var("n");
        let step_body = p("n = n ==> SUC n = SUC n");
        let a = infer(Rule::Refl(Term::mk_suc(n).unwrap()), &[], &s).unwrap();
        let d = infer(Rule::ImpIntro(p("n = n")), &[a], &s).unwrap();
        assert_eq!(d.concl(), &step_body);
        let g = infer(Rule::ForallIntro("n".into()), &[d], &s).unwrap();
        let all = infer(Rule::NatInduction, &[base.clone(), g.clone()], &s).unwrap();
        assert_eq!(all.concl().to_string(), "!n. n = n");
        let bad = infer(Rule::Refl(Term::numeral(1)), &[], &s).unwrap();
        assert!(infer(Rule::NatInduction, &[bad, g], &s).is_err());
    }

    #[test]
    fn exists_elim_freshness() {
        let s = store();
        let ex = infer(Rule::Assume(p("?k. k = 1")), &[], &s).unwrap();
        let inst = infer(Rule::Assume(p("c = 1")), &[], &s).unwrap();
        let t = infer(Rule::TruthIntro, &[], &s).unwrap();
        let _ = inst;
        let ok = infer(Rule::ExistsElim(Var::nat("c")), &[ex.clone(), t], &s).unwrap();
        assert_eq!(ok.hyps().len(), 1);
        let leak = infer(Rule::Assume(p("c = 1")), &[], &s).unwrap();
        assert!(infer(Rule::ExistsElim(Var::nat("c")), &[ex, leak], &s).is_err());
    }

    #[test]
    fn inst_instantiates_axioms() {
        let s = store();
        let ax = infer(Rule::Axiom("ADD_SUC"), &[], &s).unwrap();
        let mut sigma = Subst::new();
        sigma.insert(Var::nat("m"), Term::Zero);
        let i = infer(Rule::Inst(sigma), &[ax], &s).unwrap();
        assert_eq!(i.concl().to_string(), "1 + n = SUC (0 + n)");
        let mut bad = Subst::new();
        bad.insert(Var::nat("m"), Term::True);
        let ax = infer(Rule::Axiom("ADD_SUC"), &[], &s).unwrap();
        assert!(infer(Rule::Inst(bad), &[ax], &s).is_err());
    }

    #[test]
    fn predicates_are_not_equations() {
        let s = store();
        let a = infer(Rule::Assume(p("1 < 2")), &[], &s).unwrap();
        assert!(infer(Rule::Sym, &[a], &s).is_err());
    }
}
