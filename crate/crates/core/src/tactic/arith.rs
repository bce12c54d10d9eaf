//! Bounded natural-number arithmetic.
//!
//! Nat terms are normalized to a canonical sum of monomials. A monomial is
//! a right-nested product of atoms in ascending order; a monomial with
//! coefficient `c` is repeated `c` times, and the constant part comes last
//! as a numeral. Every normalization step is a kernel inference, so the
//! closer can only fail, never prove something false.
//!
//! Sizes are bounded: constants above [`MAX_CONST`] or more than
//! [`MAX_MONOMIALS`] monomial occurrences make the procedure fail.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, LazyLock};

use crate::kernel::derived as d;
use crate::kernel::term::{fresh_name, Conn, NatOp, Pred, Quant, Subst, Term, Var};
use crate::kernel::{TheoremStore, Thm};

use super::conv::congr_child;
use super::value::{fails, TacticError};

pub const MAX_CONST: u64 = 1000;
pub const MAX_MONOMIALS: u64 = 256;

type R = Result<Thm, TacticError>;

static STORE: LazyLock<TheoremStore> = LazyLock::new(TheoremStore::bundled);

/// A store lemma specialized to `args`, outermost quantifier first.
fn lem(name: &str, args: &[&Term]) -> R {
    let mut th = d::lemma(&STORE, name)?;
    for a in args {
        th = d::spec(a, &th)?;
    }
    Ok(th)
}

fn ax(name: &'static str, pairs: &[(&str, &Term)]) -> R {
    let sigma: Subst = pairs.iter().map(|(v, t)| (Var::nat(v), (*t).clone())).collect();
    Ok(d::inst(&sigma, &d::axiom(name)?)?)
}

fn rhs(th: &Thm) -> Term {
    th.concl().dest_equiv().expect("equation").1.clone()
}

fn add(a: &Term, b: &Term) -> Term {
    Term::Op(NatOp::Add, Arc::new(a.clone()), Arc::new(b.clone()))
}

fn mul(a: &Term, b: &Term) -> Term {
    Term::Op(NatOp::Mul, Arc::new(a.clone()), Arc::new(b.clone()))
}

fn suc(a: &Term) -> Term {
    Term::Suc(Arc::new(a.clone()))
}

fn dest_op(t: &Term, op: NatOp) -> Option<(&Term, &Term)> {
    match t {
        Term::Op(o, a, b) if *o == op => Some((a, b)),
        _ => None,
    }
}

/// A polynomial with natural coefficients over opaque atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    /// Sorted atom lists (non-empty) to positive coefficients.
    pub monos: BTreeMap<Vec<Term>, u64>,
    pub constant: u64,
}

impl Poly {
    pub fn constant(c: u64) -> Poly {
        Poly { monos: BTreeMap::new(), constant: c }
    }

    pub fn atom(t: Term) -> Poly {
        Poly { monos: BTreeMap::from([(vec![t], 1)]), constant: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.monos.is_empty() && self.constant == 0
    }

    fn check(self) -> Result<Poly, TacticError> {
        if self.constant > MAX_CONST {
            return fails(format!("arithmetic constant exceeds {MAX_CONST}"));
        }
        if self.monos.values().sum::<u64>() > MAX_MONOMIALS {
            return fails("polynomial too large");
        }
        Ok(self)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, TacticError> {
        let mut out = self.clone();
        for (m, c) in &other.monos {
            *out.monos.entry(m.clone()).or_default() += c;
        }
        out.constant += other.constant;
        out.check()
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, TacticError> {
        let mut out = Poly::constant(self.constant.saturating_mul(other.constant));
        let with_const = |p: &Poly, c: u64, out: &mut Poly| {
            if c > 0 {
                for (m, k) in &p.monos {
                    *out.monos.entry(m.clone()).or_default() += k.saturating_mul(c);
                }
            }
        };
        with_const(self, other.constant, &mut out);
        with_const(other, self.constant, &mut out);
        for (m1, c1) in &self.monos {
            for (m2, c2) in &other.monos {
                let mut m = m1.clone();
                m.extend(m2.iter().cloned());
                m.sort();
                *out.monos.entry(m).or_default() += c1.saturating_mul(*c2);
            }
        }
        out.check()
    }

    /// Coefficientwise `self <= other`.
    pub fn le(&self, other: &Poly) -> bool {
        self.constant <= other.constant
            && self.monos.iter().all(|(m, c)| other.monos.get(m).is_some_and(|k| c <= k))
    }

    /// `other - self`, provided `self.le(other)`.
    pub fn diff(&self, other: &Poly) -> Poly {
        let mut out = Poly::constant(other.constant - self.constant);
        for (m, k) in &other.monos {
            let c = self.monos.get(m).copied().unwrap_or(0);
            if *k > c {
                out.monos.insert(m.clone(), k - c);
            }
        }
        out
    }

    /// Evaluates under an assignment of atoms.
    pub fn eval(&self, atom: &dyn Fn(&Term) -> u64) -> u64 {
        let mut total = self.constant;
        for (m, c) in &self.monos {
            total += c * m.iter().map(atom).product::<u64>();
        }
        total
    }
}

pub fn poly_of(t: &Term) -> Result<Poly, TacticError> {
    if let Some(n) = t.as_numeral() {
        return Poly::constant(n).check();
    }
    match t {
        Term::Suc(a) => poly_of(a)?.add(&Poly::constant(1)),
        Term::Op(NatOp::Add, a, b) => poly_of(a)?.add(&poly_of(b)?),
        Term::Op(NatOp::Mul, a, b) => poly_of(a)?.mul(&poly_of(b)?),
        Term::Var(_) | Term::Sum(_) => Ok(Poly::atom(t.clone())),
        _ => Err(TacticError::Invalid(format!("`{t}` is not a natural number"))),
    }
}

fn mono_term(atoms: &[Term]) -> Term {
    let (last, init) = atoms.split_last().expect("monomials are non-empty");
    init.iter().rev().fold(last.clone(), |acc, a| mul(a, &acc))
}

/// The canonical term of a polynomial.
pub fn canon(p: &Poly) -> Term {
    let mut parts = Vec::new();
    for (m, c) in &p.monos {
        let t = mono_term(m);
        for _ in 0..*c {
            parts.push(t.clone());
        }
    }
    if p.constant > 0 {
        parts.push(Term::numeral(p.constant));
    }
    match parts.split_last() {
        None => Term::Zero,
        Some((last, init)) => init.iter().rev().fold(last.clone(), |acc, m| add(m, &acc)),
    }
}

/// `|- a + t = SUC^a t` for a numeral `a`.
fn add_numeral_left(a: u64, t: &Term) -> R {
    let mut th = ax("ADD_ZERO", &[("n", t)])?;
    let mut cur = Term::Zero;
    for _ in 0..a {
        let step = ax("ADD_SUC", &[("m", &cur), ("n", t)])?;
        let inner = congr_child(&rhs(&step), 0, &th)?;
        th = d::trans(&step, &inner)?;
        cur = suc(&cur);
    }
    Ok(th)
}

/// `|- a + b = c` for numerals.
pub fn num_add(a: u64, b: u64) -> R {
    if a + b > MAX_CONST {
        return fails(format!("arithmetic constant exceeds {MAX_CONST}"));
    }
    if a <= b {
        return add_numeral_left(a, &Term::numeral(b));
    }
    let comm = lem("ADD_COMM", &[&Term::numeral(a), &Term::numeral(b)])?;
    Ok(d::trans(&comm, &add_numeral_left(b, &Term::numeral(a))?)?)
}

/// `|- a * b = c` for numerals.
pub fn num_mul(a: u64, b: u64) -> R {
    if a.saturating_mul(b) > MAX_CONST {
        return fails(format!("arithmetic constant exceeds {MAX_CONST}"));
    }
    if a > b {
        let comm = lem("MULT_COMM", &[&Term::numeral(a), &Term::numeral(b)])?;
        return Ok(d::trans(&comm, &num_mul(b, a)?)?);
    }
    let nb = Term::numeral(b);
    let mut th = ax("MUL_ZERO", &[("n", &nb)])?;
    for i in 0..a {
        // SUC i * b = i * b + b = (i * b) + b = (i + 1) * b
        let step = ax("MUL_SUC", &[("m", &Term::numeral(i)), ("n", &nb)])?;
        let folded = congr_child(&rhs(&step), 0, &th)?;
        let sum = num_add(i * b, b)?;
        th = d::trans(&d::trans(&step, &folded)?, &sum)?;
    }
    Ok(th)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Mono(Vec<Term>),
    Const,
}

fn mono_atoms(t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    let mut cur = t;
    while let Some((a, rest)) = dest_op(cur, NatOp::Mul) {
        out.push(a.clone());
        cur = rest;
    }
    out.push(cur.clone());
    out
}

fn add_key(t: &Term) -> Key {
    if t.as_numeral().is_some() {
        Key::Const
    } else {
        Key::Mono(mono_atoms(t))
    }
}

fn mul_key(t: &Term) -> Key {
    Key::Mono(vec![t.clone()])
}

struct Ac {
    op: NatOp,
    /// `m op (n op p) = m op n op p`
    assoc: &'static str,
    /// `m op (n op p) = n op (m op p)`
    lcomm: &'static str,
    comm: &'static str,
    key: fn(&Term) -> Key,
}

const ADD_AC: Ac = Ac { op: NatOp::Add, assoc: "ADD_ASSOC", lcomm: "ADD_LEFT_COMM", comm: "ADD_COMM", key: add_key };
const MUL_AC: Ac = Ac { op: NatOp::Mul, assoc: "MULT_ASSOC", lcomm: "MULT_LEFT_COMM", comm: "MULT_COMM", key: mul_key };

fn split<'a>(ac: &Ac, t: &'a Term) -> (&'a Term, Option<&'a Term>) {
    match dest_op(t, ac.op) {
        Some((h, r)) => (h, Some(r)),
        None => (t, None),
    }
}

fn mk(ac: &Ac, a: &Term, b: &Term) -> Term {
    Term::Op(ac.op, Arc::new(a.clone()), Arc::new(b.clone()))
}

/// `|- A op B = C` merging two sorted chains.
fn merge(ac: &Ac, a: &Term, b: &Term) -> R {
    if ac.op == NatOp::Add {
        if *a == Term::Zero {
            return ax("ADD_ZERO", &[("n", b)]);
        }
        if *b == Term::Zero {
            return lem("ADD_0", &[a]);
        }
        if let (Some(x), Some(y)) = (a.as_numeral(), b.as_numeral()) {
            return num_add(x, y);
        }
    }
    let (ha, ra) = split(ac, a);
    let (hb, rb) = split(ac, b);
    let whole = mk(ac, a, b);
    if (ac.key)(ha) <= (ac.key)(hb) {
        let Some(ra) = ra else {
            return Ok(d::refl(&whole)?);
        };
        let s1 = d::sym(&lem(ac.assoc, &[ha, ra, b])?)?;
        let inner = merge(ac, ra, b)?;
        let s2 = congr_child(&rhs(&s1), 1, &inner)?;
        Ok(d::trans(&s1, &s2)?)
    } else {
        let Some(rb) = rb else {
            return lem(ac.comm, &[a, b]);
        };
        let s1 = lem(ac.lcomm, &[a, hb, rb])?;
        let inner = merge(ac, a, rb)?;
        let s2 = congr_child(&rhs(&s1), 1, &inner)?;
        Ok(d::trans(&s1, &s2)?)
    }
}

/// One AC normalization step at the root: `|- a op b = t` where `t` is the
/// sorted right-nested chain, assuming `a` and `b` are already sorted.
/// `None` if `t` is not an `op` node or is already sorted.
pub fn ac_step(op: NatOp, t: &Term) -> Result<Option<Thm>, TacticError> {
    let ac = match op {
        NatOp::Add => &ADD_AC,
        NatOp::Mul => &MUL_AC,
    };
    let Some((a, b)) = dest_op(t, op) else {
        return Ok(None);
    };
    let th = merge(ac, a, b)?;
    Ok(if rhs(&th) == *t { None } else { Some(th) })
}

/// `|- a + b = t` for the canonical merge of canonical sums.
fn add_canon(a: &Term, b: &Term) -> R {
    merge(&ADD_AC, a, b)
}

/// `|- c * m = m + ... + m` for a numeral `c` and a monomial `m`.
fn scalar(c: u64, m: &Term) -> R {
    let mut th = ax("MUL_ZERO", &[("n", m)])?;
    for i in 0..c {
        let step = ax("MUL_SUC", &[("m", &Term::numeral(i)), ("n", m)])?;
        let folded = congr_child(&rhs(&step), 0, &th)?;
        let acc = d::trans(&step, &folded)?;
        let (x, _) = dest_op(&rhs(&acc), NatOp::Add).map(|(x, y)| (x.clone(), y.clone())).expect("sum");
        let merged = add_canon(&x, m)?;
        th = d::trans(&acc, &merged)?;
    }
    Ok(th)
}

/// `|- a * b = t` for canonical sums `a`, `b`.
fn mul_canon(a: &Term, b: &Term) -> R {
    if *a == Term::Zero {
        return ax("MUL_ZERO", &[("n", b)]);
    }
    if *b == Term::Zero {
        return lem("MULT_0", &[a]);
    }
    if let Some((x, rest)) = dest_op(a, NatOp::Add) {
        let s1 = lem("RIGHT_ADD_DISTRIB", &[x, rest, b])?;
        return distribute(s1);
    }
    if let Some((x, rest)) = dest_op(b, NatOp::Add) {
        let s1 = lem("LEFT_ADD_DISTRIB", &[x, rest, a])?;
        return distribute(s1);
    }
    match (a.as_numeral(), b.as_numeral()) {
        (Some(x), Some(y)) => num_mul(x, y),
        (Some(x), None) => scalar(x, b),
        (None, Some(_)) => {
            let s1 = lem("MULT_COMM", &[a, b])?;
            Ok(d::trans(&s1, &mul_canon(b, a)?)?)
        }
        (None, None) => merge(&MUL_AC, a, b),
    }
}

/// Given `|- t = x * y + u * v`, multiplies out both products and merges.
fn distribute(s1: Thm) -> R {
    let sum = rhs(&s1);
    let (p, q) = dest_op(&sum, NatOp::Add).expect("distributed sum");
    let (pa, pb) = dest_op(p, NatOp::Mul).expect("product");
    let (qa, qb) = dest_op(q, NatOp::Mul).expect("product");
    let lp = mul_canon(pa, pb)?;
    let lq = mul_canon(qa, qb)?;
    let c1 = congr_child(&sum, 0, &lp)?;
    let mid = rhs(&c1);
    let c2 = congr_child(&mid, 1, &lq)?;
    let (x, y) = {
        let r = rhs(&c2);
        let (x, y) = dest_op(&r, NatOp::Add).expect("sum");
        (x.clone(), y.clone())
    };
    let merged = add_canon(&x, &y)?;
    Ok(d::trans(&d::trans(&d::trans(&s1, &c1)?, &c2)?, &merged)?)
}

/// `|- t = canon(poly_of(t))`.
pub fn norm(t: &Term) -> R {
    if let Some(n) = t.as_numeral() {
        if n > MAX_CONST {
            return fails(format!("arithmetic constant exceeds {MAX_CONST}"));
        }
        return Ok(d::refl(t)?);
    }
    match t {
        Term::Var(_) | Term::Sum(_) => Ok(d::refl(t)?),
        Term::Suc(a) => {
            let s1 = lem("ADD1", &[a])?;
            Ok(d::trans(&s1, &norm(&rhs(&s1))?)?)
        }
        Term::Op(op, a, b) => {
            let c1 = congr_child(t, 0, &norm(a)?)?;
            let mid = rhs(&c1);
            let c2 = congr_child(&mid, 1, &norm(b)?)?;
            let out = rhs(&c2);
            let (x, y) = dest_op(&out, *op).expect("same operator");
            let merged = match op {
                NatOp::Add => add_canon(x, y)?,
                NatOp::Mul => mul_canon(x, y)?,
            };
            Ok(d::trans(&d::trans(&c1, &c2)?, &merged)?)
        }
        _ => Err(TacticError::Invalid(format!("`{t}` is not a natural number"))),
    }
}

/// `|- l = r` when both sides have the same polynomial.
pub fn prove_eq(l: &Term, r: &Term) -> Result<Option<Thm>, TacticError> {
    if poly_of(l)? != poly_of(r)? {
        return Ok(None);
    }
    let a = norm(l)?;
    let b = norm(r)?;
    Ok(Some(d::trans(&a, &d::sym(&b)?)?))
}

/// `|- l <= r` when `l` is coefficientwise below `r`.
pub fn prove_le(l: &Term, r: &Term) -> Result<Option<Thm>, TacticError> {
    let (pl, pr) = (poly_of(l)?, poly_of(r)?);
    if !pl.le(&pr) {
        return Ok(None);
    }
    let witness = canon(&pl.diff(&pr));
    let Some(eq) = prove_eq(&add(l, &witness), r)? else {
        return Ok(None);
    };
    let def = ax("LE_DEF", &[("m", l), ("n", r)])?;
    let ex = rhs(&def);
    let intro = d::exists(&ex, &witness, &eq)?;
    Ok(Some(d::eq_mp(&d::sym(&def)?, &intro)?))
}

/// `|- l < r` when `l + 1` is coefficientwise below `r`.
pub fn prove_lt(l: &Term, r: &Term) -> Result<Option<Thm>, TacticError> {
    let def = ax("LT_DEF", &[("m", l), ("n", r)])?;
    Ok(match prove_le(&suc(l), r)? {
        Some(le) => Some(d::eq_mp(&d::sym(&def)?, &le)?),
        None => None,
    })
}

/// From `|- e = 0` where `e` is canonical with a positive constant, `|- F`.
fn refute_zero(th: Thm) -> R {
    let mut th = th;
    loop {
        let e = th.concl().dest_equiv().expect("equation").0.clone();
        if let Term::Suc(c) = &e {
            let ne = ax("SUC_NONZERO", &[("n", c)])?;
            return Ok(d::mp(&d::not_elim(&ne)?, &th)?);
        }
        let Some((m, rest)) = dest_op(&e, NatOp::Add) else {
            return fails("arithmetic: no contradiction");
        };
        let split = lem("ADD_EQ_0", &[m, rest])?;
        th = d::conjunct2(&d::eq_mp(&split, &th)?)?;
    }
}

/// From `|- l = r`, `|- F` when one side exceeds the other by a positive constant.
pub fn refute_eq(th: &Thm) -> Result<Option<Thm>, TacticError> {
    let Some((l, r)) = th.concl().dest_equiv() else {
        return Ok(None);
    };
    let (pl, pr) = (poly_of(l)?, poly_of(r)?);
    let (th, pl, pr) = if pr.le(&pl) {
        (th.clone(), pl, pr)
    } else if pl.le(&pr) {
        (d::sym(th)?, pr, pl)
    } else {
        return Ok(None);
    };
    let diff = pr.diff(&pl);
    if diff.constant == 0 {
        return Ok(None);
    }
    let (l, r) = {
        let (l, r) = th.concl().dest_equiv().expect("equation");
        (l.clone(), r.clone())
    };
    // r' + e = canon(pl) = l = r = r'
    let r_canon = canon(&pr);
    let e = canon(&diff);
    let a = norm(&add(&r_canon, &e))?;
    let b = norm(&l)?;
    let c = norm(&r)?;
    let chain = d::trans(&d::trans(&d::trans(&a, &d::sym(&b)?)?, &th)?, &c)?;
    let zero = d::sym(&lem("ADD_0", &[&r_canon])?)?;
    let padded = d::trans(&chain, &zero)?;
    let cancel = lem("EQ_ADD_LCANCEL", &[&r_canon, &e, &Term::Zero])?;
    let e_zero = d::eq_mp(&cancel, &padded)?;
    Ok(Some(refute_zero(e_zero)?))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn sum_eqs(a: &Thm, b: &Thm) -> R {
    let (l1, _) = a.concl().dest_equiv().expect("equation");
    let (l2, _) = b.concl().dest_equiv().expect("equation");
    let c1 = congr_child(&add(l1, l2), 0, a)?;
    let c2 = congr_child(&rhs(&c1), 1, b)?;
    Ok(d::trans(&c1, &c2)?)
}

/// Facts gathered for a refutation; `witnesses` record the existentials
/// opened while turning inequalities into equations.
struct Facts {
    eqs: Vec<Thm>,
    diseqs: Vec<Thm>,
    props: Vec<Thm>,
    witnesses: Vec<(Var, Thm)>,
    names: BTreeSet<Arc<str>>,
}

impl Facts {
    fn new(names: BTreeSet<Arc<str>>) -> Facts {
        Facts { eqs: vec![], diseqs: vec![], props: vec![], witnesses: vec![], names }
    }

    /// Adds `|- p`; returns `|- F` if it is immediately contradictory.
    fn add(&mut self, th: Thm) -> Result<Option<Thm>, TacticError> {
        match th.concl().clone() {
            Term::False => return Ok(Some(th)),
            Term::Bin(Conn::And, ..) => {
                for part in [d::conjunct1(&th)?, d::conjunct2(&th)?] {
                    if let Some(f) = self.add(part)? {
                        return Ok(Some(f));
                    }
                }
            }
            Term::Rel(Pred::Eq, ..) => self.eqs.push(th),
            Term::Rel(Pred::Le, l, r) => {
                let def = ax("LE_DEF", &[("m", &l), ("n", &r)])?;
                let ex = d::eq_mp(&def, &th)?;
                let (x, body) = ex.concl().dest_quant(Quant::Exists).expect("LE_DEF");
                let name = fresh_name(x, &self.names);
                self.names.insert(name.as_str().into());
                let v = Var::nat(&name);
                let inst = body.subst1(&Var::nat(x), &Term::Var(v.clone()));
                self.witnesses.push((v, ex.clone()));
                self.eqs.push(d::assume(&inst)?);
            }
            Term::Rel(Pred::Lt, l, r) => {
                let def = ax("LT_DEF", &[("m", &l), ("n", &r)])?;
                return self.add(d::eq_mp(&def, &th)?);
            }
            Term::Not(inner) => match &*inner {
                Term::Rel(Pred::Eq, ..) => self.diseqs.push(th),
                Term::Rel(Pred::Le, l, r) => {
                    let flip = lem("NOT_LESS_EQUAL", &[l, r])?;
                    return self.add(d::eq_mp(&flip, &th)?);
                }
                Term::Rel(Pred::Lt, l, r) => {
                    let flip = lem("NOT_LESS", &[l, r])?;
                    return self.add(d::eq_mp(&flip, &th)?);
                }
                _ => self.props.push(th),
            },
            _ => self.props.push(th),
        }
        Ok(None)
    }

    fn find_contradiction(&self) -> Result<Option<Thm>, TacticError> {
        for ne in &self.diseqs {
            let Term::Not(inner) = ne.concl() else { continue };
            let (l, r) = inner.dest_equiv().expect("equation");
            if let Some(eq) = prove_eq(l, r)? {
                return Ok(Some(d::mp(&d::not_elim(ne)?, &eq)?));
            }
        }
        for ne in &self.props {
            let Term::Not(inner) = ne.concl() else { continue };
            if let Some(pos) = self.props.iter().find(|p| p.concl().alpha_eq(inner)) {
                return Ok(Some(d::mp(&d::not_elim(ne)?, pos)?));
            }
        }
        // sums of up to three equations, each in either orientation
        let n = self.eqs.len();
        let oriented: Vec<[Thm; 2]> =
            self.eqs.iter().map(|e| Ok([e.clone(), d::sym(e)?])).collect::<Result<_, TacticError>>()?;
        for size in 1..=3.min(n) {
            for combo in combinations(n, size) {
                for mask in 0..(1usize << size) {
                    if size > 1 && mask & 1 == 1 {
                        continue;
                    }
                    let mut acc = oriented[combo[0]][mask & 1].clone();
                    for (j, &i) in combo.iter().enumerate().skip(1) {
                        acc = sum_eqs(&acc, &oriented[i][(mask >> j) & 1])?;
                    }
                    if let Some(f) = refute_eq(&acc)? {
                        return Ok(Some(f));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Discharges opened existentials from `|- F`.
    fn close(&self, f: Thm) -> R {
        let mut th = f;
        for (v, ex) in self.witnesses.iter().rev() {
            th = d::choose(v, ex, &th)?;
        }
        Ok(th)
    }
}

fn names_of<'a>(terms: impl IntoIterator<Item = &'a Term>) -> BTreeSet<Arc<str>> {
    let mut out = BTreeSet::new();
    for t in terms {
        t.all_names(&mut out);
    }
    out
}

/// `|- F` from the given facts, or failure.
fn refute(facts: &[Thm], extra_names: &BTreeSet<Arc<str>>) -> R {
    let mut names = names_of(facts.iter().map(|f| f.concl()));
    names.extend(extra_names.iter().cloned());
    let mut acc = Facts::new(names);
    for f in facts {
        if let Some(bot) = acc.add(f.clone())? {
            return acc.close(bot);
        }
    }
    match acc.find_contradiction()? {
        Some(bot) => acc.close(bot),
        None => fails("arithmetic: cannot decide goal"),
    }
}

fn by_contradiction(facts: &[Thm], c: &Term) -> R {
    let neg = Term::mk_not(c.clone()).map_err(|e| TacticError::Invalid(e.to_string()))?;
    let mut all = facts.to_vec();
    all.push(d::assume(&neg)?);
    let bot = refute(&all, &names_of([c]))?;
    Ok(d::ccontr(c, &bot)?)
}

/// Proves `c` from `facts` by stripping connectives and deciding atoms.
fn prove(facts: &[Thm], c: &Term, depth: usize) -> R {
    if depth > 64 {
        return fails("arithmetic: goal too deep");
    }
    match c {
        Term::True => Ok(d::truth()?),
        Term::Quant(Quant::Forall, x, body) => {
            let mut avoid = names_of(facts.iter().flat_map(|f| f.hyps().iter().chain([f.concl()])));
            avoid.extend(c.free_vars().into_iter().map(|v| v.name));
            let name = fresh_name(x, &avoid);
            let inner = body.subst1(&Var::nat(x), &Term::nat_var(&name));
            Ok(d::gen(&name, &prove(facts, &inner, depth + 1)?)?)
        }
        Term::Bin(Conn::Imp, a, b) => {
            let mut more = facts.to_vec();
            more.push(d::assume(a)?);
            Ok(d::disch(a, &prove(&more, b, depth + 1)?)?)
        }
        Term::Not(a) => {
            let mut more = facts.to_vec();
            more.push(d::assume(a)?);
            let bot = prove(&more, &Term::False, depth + 1)?;
            Ok(d::not_intro(&d::disch(a, &bot)?)?)
        }
        Term::Bin(Conn::And, a, b) => Ok(d::conj(&prove(facts, a, depth + 1)?, &prove(facts, b, depth + 1)?)?),
        Term::Bin(Conn::Iff, a, b) => {
            let ab = Term::mk_imp((**a).clone(), (**b).clone()).expect("bool");
            let ba = Term::mk_imp((**b).clone(), (**a).clone()).expect("bool");
            Ok(d::imp_antisym(&prove(facts, &ab, depth + 1)?, &prove(facts, &ba, depth + 1)?)?)
        }
        Term::Bin(Conn::Or, a, b) => {
            if let Ok(th) = prove(facts, a, depth + 1) {
                return Ok(d::disj1(&th, b)?);
            }
            if let Ok(th) = prove(facts, b, depth + 1) {
                return Ok(d::disj2(a, &th)?);
            }
            by_contradiction(facts, c)
        }
        Term::Rel(p, l, r) => {
            let direct = match p {
                Pred::Eq => prove_eq(l, r)?,
                Pred::Le => prove_le(l, r)?,
                Pred::Lt => prove_lt(l, r)?,
            };
            if let Some(th) = direct {
                return Ok(th);
            }
            if *p == Pred::Eq {
                let le1 = Term::mk_rel(Pred::Le, (**l).clone(), (**r).clone()).expect("nat");
                let le2 = Term::mk_rel(Pred::Le, (**r).clone(), (**l).clone()).expect("nat");
                let a = prove(facts, &le1, depth + 1)?;
                let b = prove(facts, &le2, depth + 1)?;
                let anti = lem("LESS_EQ_ANTISYM", &[l, r])?;
                return Ok(d::mp(&anti, &d::conj(&a, &b)?)?);
            }
            by_contradiction(facts, c)
        }
        Term::False => refute(facts, &BTreeSet::new()),
        _ => {
            if let Some(f) = facts.iter().find(|f| f.concl().alpha_eq(c)) {
                return Ok(f.clone());
            }
            by_contradiction(facts, c)
        }
    }
}

/// Decides `asms ?- c`; the theorem's hypotheses are among `asms`.
pub fn decide(asms: &[Term], c: &Term) -> R {
    let facts = asms.iter().map(d::assume).collect::<Result<Vec<_>, _>>()?;
    prove(&facts, c, 0)
}

/// Folds ground arithmetic at the root of `t`.
pub fn fold_numerals(t: &Term) -> Result<Option<Thm>, TacticError> {
    let (a, b) = match t {
        Term::Op(_, a, b) | Term::Rel(_, a, b) => match (a.as_numeral(), b.as_numeral()) {
            (Some(x), Some(y)) if x <= MAX_CONST && y <= MAX_CONST => (x, y),
            _ => return Ok(None),
        },
        _ => return Ok(None),
    };
    match t {
        Term::Op(NatOp::Add, ..) if a + b <= MAX_CONST => Ok(Some(num_add(a, b)?)),
        Term::Op(NatOp::Mul, ..) if a * b <= MAX_CONST => Ok(Some(num_mul(a, b)?)),
        Term::Rel(..) => {
            let holds = match t {
                Term::Rel(Pred::Eq, ..) => a == b,
                Term::Rel(Pred::Le, ..) => a <= b,
                _ => a < b,
            };
            let th = if holds {
                d::eqt_intro(&prove(&[], t, 0)?)?
            } else {
                let neg = Term::mk_not(t.clone()).expect("bool");
                d::eqf_intro(&prove(&[], &neg, 0)?)?
            };
            Ok(Some(th))
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::syntax::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn nat(s: &str) -> Term {
        crate::kernel::parse_term_in(s, Some(crate::kernel::Sort::Nat), &Default::default()).unwrap()
    }

    #[test]
    fn numerals_fold() {
        assert_eq!(num_add(3, 4).unwrap().concl().to_string(), "3 + 4 = 7");
        assert_eq!(num_add(5, 2).unwrap().concl().to_string(), "5 + 2 = 7");
        assert_eq!(num_mul(3, 4).unwrap().concl().to_string(), "3 * 4 = 12");
        assert_eq!(num_mul(0, 4).unwrap().concl().to_string(), "0 * 4 = 0");
    }

    #[test]
    fn normal_forms_agree_for_equal_polynomials() {
        let l = nat("n * (n + 1) + 2 * SUC n");
        let r = nat("SUC n * (SUC n + 1)");
        let th = prove_eq(&l, &r).unwrap().expect("equal polynomials");
        assert!(th.hyps().is_empty());
        assert!(th.concl().alpha_eq(&Term::mk_eq(l, r).unwrap()));
    }

    #[test]
    fn norm_produces_canon() {
        for s in ["(a + b) * (b + a)", "3 * x + y * 2", "SUC (SUC a) * b", "sum n + 0 * x", "a * b * c + c * b * a"] {
            let t = nat(s);
            let th = norm(&t).unwrap();
            assert_eq!(rhs(&th), canon(&poly_of(&t).unwrap()), "{s}");
        }
    }

    #[test]
    fn decides_linear_facts() {
        for goal in [
            "x + 1 <= x + 2",
            "n < SUC n",
            "n < m ==> n <= m",
            "n < m /\\ m < k ==> n < k",
            "x = 5 ==> x + 1 = 6",
            "~(SUC n = 0)",
            "a <= b ==> b <= a ==> a = b",
            "!n. 2 * n = n + n",
        ] {
            let th = decide(&[], &p(goal)).unwrap_or_else(|e| panic!("{goal}: {e}"));
            assert!(th.hyps().is_empty(), "{goal}");
            assert!(th.concl().alpha_eq(&p(goal)));
        }
    }

    #[test]
    fn refuses_false_goals() {
        for goal in ["x + 1 <= x", "n < n", "x = y", "2 * 3 = 7"] {
            assert!(decide(&[], &p(goal)).is_err(), "{goal}");
        }
    }

    #[test]
    fn folds_ground_relations() {
        let th = fold_numerals(&p("2 < 5")).unwrap().unwrap();
        assert_eq!(th.concl().to_string(), "2 < 5 <=> T");
        let th = fold_numerals(&p("3 = 4")).unwrap().unwrap();
        assert_eq!(th.concl().to_string(), "3 = 4 <=> F");
    }
}
