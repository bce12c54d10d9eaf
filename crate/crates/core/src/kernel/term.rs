//! Sorted terms for propositional logic over Peano naturals.
//!
//! Terms are immutable and cheap to clone (children live behind `Arc`).
//! Bound variables are named; equality of terms in the kernel is always
//! alpha-equivalence ([`Term::alpha_eq`]), never the derived `PartialEq`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Nat,
    Bool,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Nat => f.write_str("nat"),
            Sort::Bool => f.write_str("bool"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: Arc<str>,
    pub sort: Sort,
}

impl Var {
    pub fn new(name: &str, sort: Sort) -> Var {
        Var { name: name.into(), sort }
    }

    pub fn nat(name: &str) -> Var {
        Var::new(name, Sort::Nat)
    }

    pub fn bool(name: &str) -> Var {
        Var::new(name, Sort::Bool)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pred {
    Eq,
    Lt,
    Le,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Conn {
    And,
    Or,
    Imp,
    Iff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quant {
    Forall,
    Exists,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NatOp {
    Add,
    Mul,
}

/// A well-sorted term. Construct through the `mk_*` helpers or the parser;
/// both check sorts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    Zero,
    Suc(Arc<Term>),
    /// The `sum` function, `sum n = 0 + 1 + ... + n`.
    Sum(Arc<Term>),
    Op(NatOp, Arc<Term>, Arc<Term>),
    Rel(Pred, Arc<Term>, Arc<Term>),
    True,
    False,
    Not(Arc<Term>),
    Bin(Conn, Arc<Term>, Arc<Term>),
    /// Quantifiers bind a nat variable in a bool body.
    Quant(Quant, Arc<str>, Arc<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("sort error: {0}")]
pub struct SortError(pub String);

fn expect(t: &Term, s: Sort, ctx: &str) -> Result<(), SortError> {
    if t.sort() == s {
        Ok(())
    } else {
        Err(SortError(format!("{ctx} expects {s}, found {} `{t}`", t.sort())))
    }
}

impl Term {
    pub fn var(name: &str, sort: Sort) -> Term {
        Term::Var(Var::new(name, sort))
    }

    pub fn nat_var(name: &str) -> Term {
        Term::var(name, Sort::Nat)
    }

    pub fn bool_var(name: &str) -> Term {
        Term::var(name, Sort::Bool)
    }

    pub fn numeral(n: u64) -> Term {
        let mut t = Term::Zero;
        for _ in 0..n {
            t = Term::Suc(Arc::new(t));
        }
        t
    }

    pub fn mk_suc(t: Term) -> Result<Term, SortError> {
        expect(&t, Sort::Nat, "SUC")?;
        Ok(Term::Suc(Arc::new(t)))
    }

    pub fn mk_sum(t: Term) -> Result<Term, SortError> {
        expect(&t, Sort::Nat, "sum")?;
        Ok(Term::Sum(Arc::new(t)))
    }

    pub fn mk_op(op: NatOp, a: Term, b: Term) -> Result<Term, SortError> {
        let name = match op {
            NatOp::Add => "+",
            NatOp::Mul => "*",
        };
        expect(&a, Sort::Nat, name)?;
        expect(&b, Sort::Nat, name)?;
        Ok(Term::Op(op, Arc::new(a), Arc::new(b)))
    }

    pub fn mk_add(a: Term, b: Term) -> Result<Term, SortError> {
        Term::mk_op(NatOp::Add, a, b)
    }

    pub fn mk_mul(a: Term, b: Term) -> Result<Term, SortError> {
        Term::mk_op(NatOp::Mul, a, b)
    }

    pub fn mk_rel(p: Pred, a: Term, b: Term) -> Result<Term, SortError> {
        expect(&a, Sort::Nat, "relation")?;
        expect(&b, Sort::Nat, "relation")?;
        Ok(Term::Rel(p, Arc::new(a), Arc::new(b)))
    }

    pub fn mk_eq(a: Term, b: Term) -> Result<Term, SortError> {
        Term::mk_rel(Pred::Eq, a, b)
    }

    pub fn mk_not(t: Term) -> Result<Term, SortError> {
        expect(&t, Sort::Bool, "~")?;
        Ok(Term::Not(Arc::new(t)))
    }

    pub fn mk_bin(c: Conn, a: Term, b: Term) -> Result<Term, SortError> {
        expect(&a, Sort::Bool, "connective")?;
        expect(&b, Sort::Bool, "connective")?;
        Ok(Term::Bin(c, Arc::new(a), Arc::new(b)))
    }

    pub fn mk_and(a: Term, b: Term) -> Result<Term, SortError> {
        Term::mk_bin(Conn::And, a, b)
    }

    pub fn mk_or(a: Term, b: Term) -> Result<Term, SortError> {
        Term::mk_bin(Conn::Or, a, b)
    }

    pub fn mk_imp(a: Term, b: Term) -> Result<Term, SortError> {
        Term::mk_bin(Conn::Imp, a, b)
    }

    pub fn mk_iff(a: Term, b: Term) -> Result<Term, SortError> {
        Term::mk_bin(Conn::Iff, a, b)
    }

    pub fn mk_quant(q: Quant, x: &str, body: Term) -> Result<Term, SortError> {
        expect(&body, Sort::Bool, "quantifier body")?;
        Ok(Term::Quant(q, x.into(), Arc::new(body)))
    }

    pub fn mk_forall(x: &str, body: Term) -> Result<Term, SortError> {
        Term::mk_quant(Quant::Forall, x, body)
    }

    pub fn mk_exists(x: &str, body: Term) -> Result<Term, SortError> {
        Term::mk_quant(Quant::Exists, x, body)
    }

    /// `a = b` for nat sides, `a <=> b` for bool sides.
    pub fn mk_equiv(a: Term, b: Term) -> Result<Term, SortError> {
        match (a.sort(), b.sort()) {
            (Sort::Nat, Sort::Nat) => Term::mk_eq(a, b),
            (Sort::Bool, Sort::Bool) => Term::mk_iff(a, b),
            _ => Err(SortError(format!("cannot equate `{a}` with `{b}`"))),
        }
    }

    pub fn sort(&self) -> Sort {
        match self {
            Term::Var(v) => v.sort,
            Term::Zero | Term::Suc(_) | Term::Sum(_) | Term::Op(..) => Sort::Nat,
            _ => Sort::Bool,
        }
    }

    /// The sides of `a = b` or `a <=> b`.
    pub fn dest_equiv(&self) -> Option<(&Term, &Term)> {
        match self {
            Term::Rel(Pred::Eq, a, b) | Term::Bin(Conn::Iff, a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn dest_bin(&self, c: Conn) -> Option<(&Term, &Term)> {
        match self {
            Term::Bin(c2, a, b) if *c2 == c => Some((a, b)),
            _ => None,
        }
    }

    pub fn dest_imp(&self) -> Option<(&Term, &Term)> {
        self.dest_bin(Conn::Imp)
    }

    pub fn dest_quant(&self, q: Quant) -> Option<(&str, &Term)> {
        match self {
            Term::Quant(q2, x, b) if *q2 == q => Some((x, b)),
            _ => None,
        }
    }

    /// `Some(n)` when the term is `SUC^n 0`.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut t = self;
        loop {
            match t {
                Term::Zero => return Some(n),
                Term::Suc(inner) => {
                    n += 1;
                    t = inner;
                }
                _ => return None,
            }
        }
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::Zero | Term::True | Term::False => vec![],
            Term::Suc(a) | Term::Sum(a) | Term::Not(a) | Term::Quant(_, _, a) => vec![a],
            Term::Op(_, a, b) | Term::Rel(_, a, b) | Term::Bin(_, a, b) => vec![a, b],
        }
    }

    /// Rebuilds this node with new children (same arity and sorts).
    pub fn with_children(&self, mut kids: Vec<Term>) -> Term {
        let mut next = || Arc::new(kids.remove(0));
        match self {
            Term::Var(_) | Term::Zero | Term::True | Term::False => self.clone(),
            Term::Suc(_) => Term::Suc(next()),
            Term::Sum(_) => Term::Sum(next()),
            Term::Not(_) => Term::Not(next()),
            Term::Quant(q, x, _) => Term::Quant(*q, x.clone(), next()),
            Term::Op(op, _, _) => {
                let a = next();
                Term::Op(*op, a, next())
            }
            Term::Rel(p, _, _) => {
                let a = next();
                Term::Rel(*p, a, next())
            }
            Term::Bin(c, _, _) => {
                let a = next();
                Term::Bin(*c, a, next())
            }
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Arc<str>>, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                if !(v.sort == Sort::Nat && bound.contains(&v.name)) {
                    out.insert(v.clone());
                }
            }
            Term::Quant(_, x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            _ => {
                for c in self.children() {
                    c.collect_free(bound, out);
                }
            }
        }
    }

    pub fn has_free(&self, v: &Var) -> bool {
        self.free_vars().contains(v)
    }

    /// All variable names used anywhere, bound or free.
    pub fn all_names(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Term::Var(v) => {
                out.insert(v.name.clone());
            }
            Term::Quant(_, x, body) => {
                out.insert(x.clone());
                body.all_names(out);
            }
            _ => {
                for c in self.children() {
                    c.all_names(out);
                }
            }
        }
    }

    pub fn alpha_eq(&self, other: &Term) -> bool {
        alpha(self, other, &mut Vec::new())
    }

    /// Capture-avoiding simultaneous substitution of free variables.
    pub fn subst(&self, sigma: &Subst) -> Term {
        if sigma.is_empty() {
            return self.clone();
        }
        match self {
            Term::Var(v) => sigma.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Quant(q, x, body) => {
                let bound = Var::nat(x);
                let mut inner = sigma.clone();
                inner.remove(&bound);
                let body_free = body.free_vars();
                inner.retain(|k, _| body_free.contains(k));
                if inner.is_empty() {
                    return self.clone();
                }
                let captures = inner.values().any(|t| t.has_free(&bound));
                if captures {
                    let mut avoid: BTreeSet<Arc<str>> = BTreeSet::new();
                    body.all_names(&mut avoid);
                    for t in inner.values() {
                        t.all_names(&mut avoid);
                    }
                    let fresh = fresh_name(x, &avoid);
                    inner.insert(bound, Term::nat_var(&fresh));
                    Term::Quant(*q, fresh.into(), Arc::new(body.subst(&inner)))
                } else {
                    Term::Quant(*q, x.clone(), Arc::new(body.subst(&inner)))
                }
            }
            _ => {
                let kids = self.children().into_iter().map(|c| c.subst(sigma)).collect();
                self.with_children(kids)
            }
        }
    }

    pub fn subst1(&self, v: &Var, t: &Term) -> Term {
        let mut s = Subst::new();
        s.insert(v.clone(), t.clone());
        self.subst(&s)
    }

    /// Replaces free occurrences of `hole` by `t` *without* renaming binders,
    /// so variables of `t` may be captured. Callers are responsible for the
    /// side conditions that make such a replacement sound.
    pub fn replace_capturing(&self, hole: &Var, t: &Term) -> Term {
        match self {
            Term::Var(v) if v == hole => t.clone(),
            Term::Quant(_, x, _) if hole.sort == Sort::Nat && **x == *hole.name => self.clone(),
            _ => {
                let kids: Vec<Term> = self.children().into_iter().map(|c| c.replace_capturing(hole, t)).collect();
                if kids.is_empty() {
                    self.clone()
                } else {
                    self.with_children(kids)
                }
            }
        }
    }

    /// Names bound by quantifiers enclosing some free occurrence of `hole`.
    pub fn binders_over(&self, hole: &Var) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        binders_over(self, hole, &mut Vec::new(), &mut out);
        out
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        let mut t = self;
        for &i in path {
            t = *t.children().get(i)?;
        }
        Some(t)
    }
}

fn binders_over(t: &Term, hole: &Var, stack: &mut Vec<Arc<str>>, out: &mut BTreeSet<Arc<str>>) {
    match t {
        Term::Var(v) if v == hole => out.extend(stack.iter().cloned()),
        Term::Quant(_, x, body) => {
            if hole.sort == Sort::Nat && **x == *hole.name {
                return;
            }
            stack.push(x.clone());
            binders_over(body, hole, stack, out);
            stack.pop();
        }
        _ => {
            for c in t.children() {
                binders_over(c, hole, stack, out);
            }
        }
    }
}

fn alpha(a: &Term, b: &Term, env: &mut Vec<(Arc<str>, Arc<str>)>) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            if x.sort != y.sort {
                return false;
            }
            if x.sort == Sort::Nat {
                for (l, r) in env.iter().rev() {
                    let lx = *l == x.name;
                    let ry = *r == y.name;
                    if lx || ry {
                        return lx && ry;
                    }
                }
            }
            x.name == y.name
        }
        (Term::Quant(q1, x, b1), Term::Quant(q2, y, b2)) => {
            if q1 != q2 {
                return false;
            }
            env.push((x.clone(), y.clone()));
            let r = alpha(b1, b2, env);
            env.pop();
            r
        }
        (Term::Zero, Term::Zero) | (Term::True, Term::True) | (Term::False, Term::False) => true,
        (Term::Suc(x), Term::Suc(y)) | (Term::Sum(x), Term::Sum(y)) | (Term::Not(x), Term::Not(y)) => alpha(x, y, env),
        (Term::Op(o1, a1, b1), Term::Op(o2, a2, b2)) => o1 == o2 && alpha(a1, a2, env) && alpha(b1, b2, env),
        (Term::Rel(p1, a1, b1), Term::Rel(p2, a2, b2)) => p1 == p2 && alpha(a1, a2, env) && alpha(b1, b2, env),
        (Term::Bin(c1, a1, b1), Term::Bin(c2, a2, b2)) => c1 == c2 && alpha(a1, a2, env) && alpha(b1, b2, env),
        _ => false,
    }
}

pub type Subst = BTreeMap<Var, Term>;

/// `base`, or `base'`, `base''`, ... whichever is not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<Arc<str>>) -> String {
    let mut name = base.to_string();
    while avoid.contains(name.as_str()) {
        name.push('\'');
    }
    name
}

/// A nat variable named after `base` that is not free in any of `terms`.
pub fn fresh_var<'a>(base: &str, terms: impl IntoIterator<Item = &'a Term>) -> Var {
    let mut avoid = BTreeSet::new();
    for t in terms {
        for v in t.free_vars() {
            avoid.insert(v.name);
        }
    }
    Var::nat(&fresh_name(base, &avoid))
}

/// First-order matching of `pattern` against `target` up to alpha-equivalence.
///
/// Only variables in `schematic` may be instantiated; every other free
/// variable of the pattern must occur literally in the target. Returns the
/// unique most general substitution, restricted to schematic variables that
/// occur in the pattern.
pub fn match_term(pattern: &Term, target: &Term, schematic: &BTreeSet<Var>) -> Option<Subst> {
    let mut sigma = Subst::new();
    if matcher(pattern, target, schematic, &mut Vec::new(), &mut sigma) {
        Some(sigma)
    } else {
        None
    }
}

/// [`match_term`] with every free variable of the pattern schematic.
pub fn match_free(pattern: &Term, target: &Term) -> Option<Subst> {
    match_term(pattern, target, &pattern.free_vars())
}

fn matcher(
    p: &Term,
    t: &Term,
    schematic: &BTreeSet<Var>,
    env: &mut Vec<(Arc<str>, Arc<str>)>,
    sigma: &mut Subst,
) -> bool {
    if let Term::Var(v) = p {
        let bound_in_pattern = v.sort == Sort::Nat && env.iter().any(|(l, _)| *l == v.name);
        if !bound_in_pattern && schematic.contains(v) {
            if t.sort() != v.sort {
                return false;
            }
            // the instance may not mention variables bound inside the target
            let fv = t.free_vars();
            if env.iter().any(|(_, r)| fv.contains(&Var::nat(r))) {
                return false;
            }
            if let Some(prev) = sigma.get(v) {
                return prev.alpha_eq(t);
            }
            sigma.insert(v.clone(), t.clone());
            return true;
        }
    }
    match (p, t) {
        (Term::Var(_), Term::Var(_)) => alpha(p, t, env),
        (Term::Quant(q1, x, b1), Term::Quant(q2, y, b2)) => {
            if q1 != q2 {
                return false;
            }
            env.push((x.clone(), y.clone()));
            let r = matcher(b1, b2, schematic, env, sigma);
            env.pop();
            r
        }
        (Term::Zero, Term::Zero) | (Term::True, Term::True) | (Term::False, Term::False) => true,
        (Term::Suc(x), Term::Suc(y)) | (Term::Sum(x), Term::Sum(y)) | (Term::Not(x), Term::Not(y)) => {
            matcher(x, y, schematic, env, sigma)
        }
        (Term::Op(o1, a1, b1), Term::Op(o2, a2, b2)) => {
            o1 == o2 && matcher(a1, a2, schematic, env, sigma) && matcher(b1, b2, schematic, env, sigma)
        }
        (Term::Rel(p1, a1, b1), Term::Rel(p2, a2, b2)) => {
            p1 == p2 && matcher(a1, a2, schematic, env, sigma) && matcher(b1, b2, schematic, env, sigma)
        }
        (Term::Bin(c1, a1, b1), Term::Bin(c2, a2, b2)) => {
            c1 == c2 && matcher(a1, a2, schematic, env, sigma) && matcher(b1, b2, schematic, env, sigma)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: &str) -> Term {
        Term::nat_var(x)
    }

    #[test]
    fn alpha_equivalence_renames_binders() {
        let a = Term::mk_forall("x", Term::mk_eq(n("x"), n("y")).unwrap()).unwrap();
        let b = Term::mk_forall("z", Term::mk_eq(n("z"), n("y")).unwrap()).unwrap();
        let c = Term::mk_forall("y", Term::mk_eq(n("y"), n("y")).unwrap()).unwrap();
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&c));
    }

    #[test]
    fn substitution_avoids_capture() {
        // (!x. x = y)[y := x]  ~>  !x'. x' = x
        let t = Term::mk_forall("x", Term::mk_eq(n("x"), n("y")).unwrap()).unwrap();
        let r = t.subst1(&Var::nat("y"), &n("x"));
        let expect = Term::mk_forall("w", Term::mk_eq(n("w"), n("x")).unwrap()).unwrap();
        assert!(r.alpha_eq(&expect), "{r:?}");
    }

    #[test]
    fn numerals_are_suc_chains() {
        assert_eq!(Term::numeral(2), Term::Suc(Arc::new(Term::Suc(Arc::new(Term::Zero)))));
        assert_eq!(Term::numeral(3).as_numeral(), Some(3));
        assert_eq!(Term::mk_suc(n("k")).unwrap().as_numeral(), None);
    }

    #[test]
    fn sort_errors_are_reported() {
        assert!(Term::mk_add(Term::True, Term::Zero).is_err());
        assert!(Term::mk_and(n("x"), Term::True).is_err());
    }

    #[test]
    fn nonlinear_match_conflict() {
        let pat = Term::mk_add(n("x"), n("x")).unwrap();
        let tgt = Term::mk_add(Term::numeral(1), Term::numeral(2)).unwrap();
        assert!(match_free(&pat, &tgt).is_none());
    }

    #[test]
    fn match_does_not_capture_target_binders() {
        // pattern !y. P where P schematic cannot match a body mentioning y
        let pat = Term::mk_forall("y", Term::bool_var("P")).unwrap();
        let tgt = Term::mk_forall("y", Term::mk_eq(n("y"), n("y")).unwrap()).unwrap();
        assert!(match_free(&pat, &tgt).is_none());
        let tgt2 = Term::mk_forall("y", Term::mk_eq(n("z"), n("z")).unwrap()).unwrap();
        assert!(match_free(&pat, &tgt2).is_some());
    }
}
