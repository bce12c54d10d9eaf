//! Derived rules: compositions of primitive inferences.

use std::collections::BTreeSet;
use std::sync::{Arc, LazyLock};

use super::store::TheoremStore;
use super::term::{fresh_name, Conn, Quant, Subst, Term, Var};
use super::thm::{infer, KernelError, Rule, Thm};

static NO_LEMMAS: LazyLock<TheoremStore> = LazyLock::new(TheoremStore::empty);

type R = Result<Thm, KernelError>;

fn prim(rule: Rule, prem: &[Thm]) -> R {
    infer(rule, prem, &NO_LEMMAS)
}

pub fn assume(p: &Term) -> R {
    prim(Rule::Assume(p.clone()), &[])
}

pub fn disch(p: &Term, th: &Thm) -> R {
    prim(Rule::ImpIntro(p.clone()), std::slice::from_ref(th))
}

pub fn mp(imp: &Thm, th: &Thm) -> R {
    prim(Rule::ImpElim, &[imp.clone(), th.clone()])
}

/// `A |- p ==> q` gives `A u {p} |- q`.
pub fn undisch(th: &Thm) -> R {
    let Some((p, _)) = th.concl().dest_imp() else {
        return Err(KernelError(format!("UNDISCH: `{}` is not an implication", th.concl())));
    };
    mp(th, &assume(p)?)
}

/// `A |- p`, `B |- q` gives `A u (B - {p}) |- q`.
pub fn prove_hyp(lemma: &Thm, th: &Thm) -> R {
    if !th.hyps().iter().any(|h| h.alpha_eq(lemma.concl())) {
        return Ok(th.clone());
    }
    mp(&disch(lemma.concl(), th)?, lemma)
}

pub fn conj(a: &Thm, b: &Thm) -> R {
    prim(Rule::ConjIntro, &[a.clone(), b.clone()])
}

pub fn conjunct1(th: &Thm) -> R {
    prim(Rule::ConjElimL, std::slice::from_ref(th))
}

pub fn conjunct2(th: &Thm) -> R {
    prim(Rule::ConjElimR, std::slice::from_ref(th))
}

/// All leaves of a right-nested conjunction.
pub fn conjuncts(th: &Thm) -> Result<Vec<Thm>, KernelError> {
    if th.concl().dest_bin(Conn::And).is_some() {
        let mut out = conjuncts(&conjunct1(th)?)?;
        out.extend(conjuncts(&conjunct2(th)?)?);
        Ok(out)
    } else {
        Ok(vec![th.clone()])
    }
}

pub fn disj1(th: &Thm, q: &Term) -> R {
    prim(Rule::DisjIntroL(q.clone()), std::slice::from_ref(th))
}

pub fn disj2(p: &Term, th: &Thm) -> R {
    prim(Rule::DisjIntroR(p.clone()), std::slice::from_ref(th))
}

pub fn disj_cases(d: &Thm, a: &Thm, b: &Thm) -> R {
    prim(Rule::DisjCases, &[d.clone(), a.clone(), b.clone()])
}

pub fn truth() -> R {
    prim(Rule::TruthIntro, &[])
}

pub fn contr(p: &Term, th: &Thm) -> R {
    prim(Rule::Contradiction(p.clone()), std::slice::from_ref(th))
}

pub fn excluded_middle(p: &Term) -> R {
    prim(Rule::ExcludedMiddle(p.clone()), &[])
}

pub fn not_intro(th: &Thm) -> R {
    prim(Rule::NotIntro, std::slice::from_ref(th))
}

pub fn not_elim(th: &Thm) -> R {
    prim(Rule::NotElim, std::slice::from_ref(th))
}

/// `A u {~p} |- F` gives `A |- p`.
pub fn ccontr(p: &Term, th: &Thm) -> R {
    let em = excluded_middle(p)?;
    let yes = assume(p)?;
    let no = contr(p, th)?;
    disj_cases(&em, &yes, &no)
}

pub fn imp_antisym(a: &Thm, b: &Thm) -> R {
    prim(Rule::IffIntro, &[a.clone(), b.clone()])
}

pub fn refl(t: &Term) -> R {
    prim(Rule::Refl(t.clone()), &[])
}

pub fn sym(th: &Thm) -> R {
    prim(Rule::Sym, std::slice::from_ref(th))
}

pub fn trans(a: &Thm, b: &Thm) -> R {
    prim(Rule::Trans, &[a.clone(), b.clone()])
}

pub fn eq_mp(eq: &Thm, th: &Thm) -> R {
    prim(Rule::EqMp, &[eq.clone(), th.clone()])
}

/// `A |- p <=> q` gives `(A |- p ==> q, A |- q ==> p)`.
pub fn eq_imp_rule(th: &Thm) -> Result<(Thm, Thm), KernelError> {
    let Some((p, q)) = th.concl().dest_bin(Conn::Iff) else {
        return Err(KernelError(format!("EQ_IMP_RULE: `{}` is not an iff", th.concl())));
    };
    let fwd = disch(p, &eq_mp(th, &assume(p)?)?)?;
    let bwd = disch(q, &eq_mp(&sym(th)?, &assume(q)?)?)?;
    Ok((fwd, bwd))
}

/// `A |- p` gives `A |- p <=> T`.
pub fn eqt_intro(th: &Thm) -> R {
    let p = th.concl();
    let fwd = disch(p, &truth()?)?;
    let bwd = disch(&Term::True, th)?;
    imp_antisym(&fwd, &bwd)
}

/// `A |- p <=> T` gives `A |- p`.
pub fn eqt_elim(th: &Thm) -> R {
    eq_mp(&sym(th)?, &truth()?)
}

/// `A |- ~p` gives `A |- p <=> F`.
pub fn eqf_intro(th: &Thm) -> R {
    let Term::Not(p) = th.concl() else {
        return Err(KernelError(format!("EQF_INTRO: `{}` is not a negation", th.concl())));
    };
    let fwd = not_elim(th)?;
    let bwd = disch(&Term::False, &contr(p, &assume(&Term::False)?)?)?;
    imp_antisym(&fwd, &bwd)
}

/// `A |- p <=> F` gives `A |- ~p`.
pub fn eqf_elim(th: &Thm) -> R {
    let (fwd, _) = eq_imp_rule(th)?;
    not_intro(&fwd)
}

/// `A |- a = b` gives `A |- C[a] = C[b]`; `hole` may be captured by binders in `context`.
pub fn congr(context: &Term, hole: &Var, th: &Thm) -> R {
    prim(Rule::Congr { context: context.clone(), hole: hole.clone() }, std::slice::from_ref(th))
}

pub fn gen(x: &str, th: &Thm) -> R {
    prim(Rule::ForallIntro(Arc::from(x)), std::slice::from_ref(th))
}

pub fn spec(t: &Term, th: &Thm) -> R {
    prim(Rule::ForallElim(t.clone()), std::slice::from_ref(th))
}

pub fn exists(ex: &Term, witness: &Term, th: &Thm) -> R {
    prim(Rule::ExistsIntro { exists: ex.clone(), witness: witness.clone() }, std::slice::from_ref(th))
}

pub fn choose(v: &Var, ex: &Thm, th: &Thm) -> R {
    prim(Rule::ExistsElim(v.clone()), &[ex.clone(), th.clone()])
}

/// `A |- P[0]`, `B |- !x. P ==> P[SUC x]` gives `A u B |- !x. P`.
pub fn induct(base: &Thm, step: &Thm) -> R {
    prim(Rule::NatInduction, &[base.clone(), step.clone()])
}

pub fn inst(sigma: &Subst, th: &Thm) -> R {
    if sigma.is_empty() {
        return Ok(th.clone());
    }
    prim(Rule::Inst(sigma.clone()), std::slice::from_ref(th))
}

pub fn axiom(name: &'static str) -> R {
    prim(Rule::Axiom(name), &[])
}

pub fn lemma(store: &TheoremStore, name: &str) -> R {
    infer(Rule::StoreLemma(Arc::from(name)), &[], store)
}

fn hyp_names(th: &Thm) -> BTreeSet<Arc<str>> {
    let mut avoid = BTreeSet::new();
    for h in th.hyps() {
        for v in h.free_vars() {
            avoid.insert(v.name);
        }
    }
    avoid
}

/// Strips outer universal quantifiers, choosing variable names that are
/// free neither in the hypotheses nor elsewhere in the conclusion. Returns
/// the theorem and the introduced variables, outermost first.
pub fn spec_all(th: &Thm) -> Result<(Thm, Vec<Var>), KernelError> {
    let mut avoid = hyp_names(th);
    for v in th.concl().free_vars() {
        avoid.insert(v.name);
    }
    let mut cur = th.clone();
    let mut vars = Vec::new();
    while let Some((x, _)) = cur.concl().dest_quant(Quant::Forall) {
        let name = fresh_name(x, &avoid);
        avoid.insert(name.as_str().into());
        let v = Var::nat(&name);
        cur = spec(&Term::Var(v.clone()), &cur)?;
        vars.push(v);
    }
    Ok((cur, vars))
}

/// Generalizes over `vars`, innermost last.
pub fn gen_list(vars: &[Var], th: &Thm) -> R {
    let mut cur = th.clone();
    for v in vars.iter().rev() {
        cur = gen(&v.name, &cur)?;
    }
    Ok(cur)
}

/// Universally closes over every nat variable free in the conclusion but
/// not in the hypotheses, in first-occurrence order.
pub fn gen_all(th: &Thm) -> R {
    let avoid = hyp_names(th);
    let mut order = Vec::new();
    first_occurrences(th.concl(), &mut Vec::new(), &mut order);
    let vars: Vec<Var> = order
        .into_iter()
        .filter(|v| v.sort == super::term::Sort::Nat && !avoid.contains(&v.name))
        .collect();
    gen_list(&vars, th)
}

/// Free variables of `t` in left-to-right order of first occurrence.
pub fn free_vars_ordered(t: &Term) -> Vec<Var> {
    let mut out = Vec::new();
    first_occurrences(t, &mut Vec::new(), &mut out);
    out
}

fn first_occurrences(t: &Term, bound: &mut Vec<Arc<str>>, out: &mut Vec<Var>) {
    match t {
        Term::Var(v) => {
            let is_bound = v.sort == super::term::Sort::Nat && bound.contains(&v.name);
            if !is_bound && !out.contains(v) {
                out.push(v.clone());
            }
        }
        Term::Quant(_, x, body) => {
            bound.push(x.clone());
            first_occurrences(body, bound, out);
            bound.pop();
        }
        _ => {
            for c in t.children() {
                first_occurrences(c, bound, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::syntax::parse_term;
    use crate::kernel::thm::replay;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn truth_equations() {
        let a = assume(&p("x = 1")).unwrap();
        let e = eqt_intro(&a).unwrap();
        assert_eq!(e.concl().to_string(), "x = 1 <=> T");
        assert!(eqt_elim(&e).unwrap().same_as(&a));
        let n = assume(&p("~q")).unwrap();
        let f = eqf_intro(&n).unwrap();
        assert_eq!(f.concl().to_string(), "q <=> F");
        assert!(eqf_elim(&f).unwrap().same_as(&n));
        replay(&f, &TheoremStore::empty()).unwrap();
    }

    #[test]
    fn spec_all_avoids_hypothesis_names() {
        let h = assume(&p("!n. n = m ==> n = m")).unwrap();
        let h2 = prove_hyp(&assume(&p("n = 0")).unwrap(), &h).unwrap();
        let (th, vars) = spec_all(&h2).unwrap();
        assert_eq!(vars.len(), 1);
        let _ = th;
        let both = conj(&assume(&p("n = 0")).unwrap(), &h).unwrap();
        let (sp, vs) = spec_all(&conjunct2(&both).unwrap()).unwrap();
        assert!(vs.iter().all(|v| &*v.name != "n" && &*v.name != "m"));
        assert!(sp.concl().to_string().contains(" = m"));
    }

    #[test]
    fn ccontr_discharges_negation() {
        let np = p("~(x = x)");
        let th = mp(&not_elim(&assume(&np).unwrap()).unwrap(), &refl(&Term::nat_var("x")).unwrap()).unwrap();
        let out = ccontr(&p("x = x"), &th).unwrap();
        assert!(out.hyps().is_empty());
    }

    #[test]
    fn gen_all_order() {
        let ax = axiom("ADD_SUC").unwrap();
        let g = gen_all(&ax).unwrap();
        assert_eq!(g.concl().to_string(), "!m n. SUC m + n = SUC (m + n)");
    }
}
