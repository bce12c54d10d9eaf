//! Executable tactic values, justifications, and the basic tacticals.

use std::fmt;
use std::sync::Arc;

use crate::kernel::derived as d;
use crate::kernel::syntax::{parse_term_in, TermError};
use crate::kernel::term::{Sort, Term, Var};
use crate::kernel::{KernelError, Thm};

use super::expr::TypeMismatch;
use super::goal::Goal;
use super::types::TacticType;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TacticError {
    #[error("tactic failed: {0}")]
    Fails(String),
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("unknown tactic `{0}`")]
    UnknownTactic(String),
    #[error("`{0}` is declared without an implementation")]
    OpaqueTactic(String),
    #[error(transparent)]
    Type(#[from] TypeMismatch),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("bad quotation: {0}")]
    Term(#[from] TermError),
    #[error("invalid justification: {0}")]
    Invalid(String),
}

pub fn fails<T>(msg: impl Into<String>) -> Result<T, TacticError> {
    Err(TacticError::Fails(msg.into()))
}

pub type JustFn = dyn Fn(&[Thm]) -> Result<Thm, TacticError> + Send + Sync;

/// Maps theorems achieving the subgoals, in order, to one achieving the goal.
#[derive(Clone)]
pub struct Justification(Arc<JustFn>);

impl Justification {
    pub fn new(f: impl Fn(&[Thm]) -> Result<Thm, TacticError> + Send + Sync + 'static) -> Justification {
        Justification(Arc::new(f))
    }

    pub fn identity() -> Justification {
        Justification::new(|ths| {
            ths.first().cloned().ok_or_else(|| TacticError::Invalid("identity needs one theorem".into()))
        })
    }

    pub fn call(&self, ths: &[Thm]) -> Result<Thm, TacticError> {
        (self.0)(ths)
    }
}

impl fmt::Debug for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<justification>")
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub goals: Vec<Goal>,
    pub just: Justification,
}

impl Outcome {
    pub fn new(goals: Vec<Goal>, just: impl Fn(&[Thm]) -> Result<Thm, TacticError> + Send + Sync + 'static) -> Outcome {
        Outcome { goals, just: Justification::new(just) }
    }

    /// A closed goal proved by `th`.
    pub fn proved(th: Thm) -> Outcome {
        Outcome::new(vec![], move |_| Ok(th.clone()))
    }

    pub fn unchanged(g: &Goal) -> Outcome {
        Outcome { goals: vec![g.clone()], just: Justification::identity() }
    }
}

pub type TacFn = dyn Fn(&Goal) -> Result<Outcome, TacticError> + Send + Sync;

#[derive(Clone)]
pub struct Tactic(Arc<TacFn>);

impl Tactic {
    pub fn new(f: impl Fn(&Goal) -> Result<Outcome, TacticError> + Send + Sync + 'static) -> Tactic {
        Tactic(Arc::new(f))
    }

    pub fn apply(&self, g: &Goal) -> Result<Outcome, TacticError> {
        (self.0)(g)
    }
}

impl fmt::Debug for Tactic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<tactic>")
    }
}

pub type FunFn = dyn Fn(TacticValue) -> Result<TacticValue, TacticError> + Send + Sync;

#[derive(Clone)]
pub enum TacticValue {
    Tac(Tactic),
    Thm(Thm),
    ThmList(Vec<Thm>),
    Quot(Arc<str>),
    QuotList(Vec<Arc<str>>),
    Fun(TacticType, Arc<FunFn>),
}

impl fmt::Debug for TacticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TacticValue::Tac(_) => f.write_str("<tactic>"),
            TacticValue::Thm(th) => write!(f, "{th}"),
            TacticValue::ThmList(ths) => write!(f, "{ths:?}"),
            TacticValue::Quot(q) => write!(f, "`{q}`"),
            TacticValue::QuotList(qs) => write!(f, "{qs:?}"),
            TacticValue::Fun(ty, _) => write!(f, "<{ty}>"),
        }
    }
}

impl TacticValue {
    pub fn fun(ty: TacticType, f: impl Fn(TacticValue) -> Result<TacticValue, TacticError> + Send + Sync + 'static) -> Self {
        debug_assert!(ty.is_function());
        TacticValue::Fun(ty, Arc::new(f))
    }

    pub fn type_of(&self) -> TacticType {
        match self {
            TacticValue::Tac(_) => TacticType::Tac,
            TacticValue::Thm(_) => TacticType::Thm,
            TacticValue::ThmList(_) => TacticType::ThmList,
            TacticValue::Quot(_) => TacticType::Quot,
            TacticValue::QuotList(_) => TacticType::QuotList,
            TacticValue::Fun(ty, _) => *ty,
        }
    }

    pub fn call(&self, arg: TacticValue) -> Result<TacticValue, TacticError> {
        match self {
            TacticValue::Fun(_, f) => f(arg),
            other => Err(TypeMismatch(format!("{other:?} is not a function")).into()),
        }
    }

    pub fn into_tac(self) -> Result<Tactic, TacticError> {
        match self {
            TacticValue::Tac(t) => Ok(t),
            other => Err(TypeMismatch(format!("expected a tactic, found {other:?}")).into()),
        }
    }

    pub fn into_thm(self) -> Result<Thm, TacticError> {
        match self {
            TacticValue::Thm(t) => Ok(t),
            other => Err(TypeMismatch(format!("expected a theorem, found {other:?}")).into()),
        }
    }

    pub fn into_thms(self) -> Result<Vec<Thm>, TacticError> {
        match self {
            TacticValue::ThmList(t) => Ok(t),
            other => Err(TypeMismatch(format!("expected a theorem list, found {other:?}")).into()),
        }
    }

    pub fn into_quot(self) -> Result<Arc<str>, TacticError> {
        match self {
            TacticValue::Quot(q) => Ok(q),
            other => Err(TypeMismatch(format!("expected a quotation, found {other:?}")).into()),
        }
    }

    pub fn into_quots(self) -> Result<Vec<Arc<str>>, TacticError> {
        match self {
            TacticValue::QuotList(q) => Ok(q),
            other => Err(TypeMismatch(format!("expected a quotation list, found {other:?}")).into()),
        }
    }

    /// A theorem tactic: `thm -> tactic`.
    pub fn into_thm_tactic(self) -> Result<ThmTactic, TacticError> {
        if self.type_of() != TacticType::ThmTac {
            return Err(TypeMismatch(format!("expected a theorem tactic, found {self:?}")).into());
        }
        Ok(ThmTactic(self))
    }
}

/// A value of type `thm -> tactic`.
#[derive(Clone, Debug)]
pub struct ThmTactic(TacticValue);

impl ThmTactic {
    pub fn new(f: impl Fn(Thm) -> Result<Tactic, TacticError> + Send + Sync + 'static) -> ThmTactic {
        ThmTactic(TacticValue::fun(TacticType::ThmTac, move |v| Ok(TacticValue::Tac(f(v.into_thm()?)?))))
    }

    pub fn to_tactic(&self, th: Thm) -> Result<Tactic, TacticError> {
        self.0.call(TacticValue::Thm(th))?.into_tac()
    }

    pub fn into_value(self) -> TacticValue {
        self.0
    }
}

/// Parses a quotation as a proposition in the context of `g`.
pub fn read_prop(q: &str, g: &Goal) -> Result<Term, TacticError> {
    Ok(parse_term_in(q, Some(Sort::Bool), &g.sort_env())?)
}

/// Parses a quotation as a natural-number term in the context of `g`.
pub fn read_nat(q: &str, g: &Goal) -> Result<Term, TacticError> {
    Ok(parse_term_in(q, Some(Sort::Nat), &g.sort_env())?)
}

fn split_counts(ths: &[Thm], counts: &[usize]) -> Result<Vec<Vec<Thm>>, TacticError> {
    let total: usize = counts.iter().sum();
    if ths.len() != total {
        return Err(TacticError::Invalid(format!("expected {total} theorems, got {}", ths.len())));
    }
    let mut out = Vec::with_capacity(counts.len());
    let mut i = 0;
    for &c in counts {
        out.push(ths[i..i + c].to_vec());
        i += c;
    }
    Ok(out)
}

pub fn all_tac() -> Tactic {
    Tactic::new(|g| Ok(Outcome::unchanged(g)))
}

pub fn no_tac() -> Tactic {
    Tactic::new(|_| fails("NO_TAC"))
}

/// `t1 THEN t2`: `t2` on every subgoal of `t1`.
pub fn then(t1: Tactic, t2: Tactic) -> Tactic {
    Tactic::new(move |g| {
        let first = t1.apply(g)?;
        let mut goals = Vec::new();
        let mut parts = Vec::new();
        for sg in &first.goals {
            let o = t2.apply(sg)?;
            parts.push((o.goals.len(), o.just));
            goals.extend(o.goals);
        }
        let j1 = first.just;
        Ok(Outcome::new(goals, move |ths| {
            let counts: Vec<usize> = parts.iter().map(|p| p.0).collect();
            let groups = split_counts(ths, &counts)?;
            let mids = parts.iter().zip(groups).map(|(p, g)| p.1.call(&g)).collect::<Result<Vec<_>, _>>()?;
            j1.call(&mids)
        }))
    })
}

pub fn orelse(t1: Tactic, t2: Tactic) -> Tactic {
    Tactic::new(move |g| t1.apply(g).or_else(|_| t2.apply(g)))
}

/// Applies `t2` to the `k`-th (1-based) subgoal produced by `t1`,
/// splicing its subgoals in place.
pub fn then_nth(t1: Tactic, k: usize, t2: Tactic) -> Tactic {
    Tactic::new(move |g| {
        let first = t1.apply(g)?;
        if k == 0 || k > first.goals.len() {
            return fails(format!("no subgoal {k}: {} open", first.goals.len()));
        }
        let inner = t2.apply(&first.goals[k - 1])?;
        let n_inner = inner.goals.len();
        let mut goals = first.goals[..k - 1].to_vec();
        goals.extend(inner.goals);
        goals.extend(first.goals[k..].iter().cloned());
        let (j1, j2) = (first.just, inner.just);
        Ok(Outcome::new(goals, move |ths| {
            let groups = split_counts(ths, &[k - 1, n_inner, ths.len().saturating_sub(k - 1 + n_inner)])?;
            let mid = j2.call(&groups[1])?;
            let mut all = groups[0].clone();
            all.push(mid);
            all.extend(groups[2].iter().cloned());
            j1.call(&all)
        }))
    })
}

/// Proves the quoted proposition with `tac` (which must close it) and adds
/// it as an assumption.
pub fn by(q: Arc<str>, tac: Tactic) -> Tactic {
    Tactic::new(move |g| {
        let p = read_prop(&q, g)?;
        let side = Goal::with_asms(g.asms.clone(), p.clone());
        let o = tac.apply(&side)?;
        if !o.goals.is_empty() {
            return fails(format!("`{p}` was not proved ({} subgoals remain)", o.goals.len()));
        }
        let fact = o.just.call(&[])?;
        let mut rest = g.clone();
        rest.push_asm(p);
        Ok(Outcome::new(vec![rest], move |ths| Ok(d::prove_hyp(&fact, &ths[0])?)))
    })
}

/// Reduces the goal to the quoted proposition; `tac` must prove that the
/// proposition implies the goal.
pub fn suffices_by(q: Arc<str>, tac: Tactic) -> Tactic {
    Tactic::new(move |g| {
        let p = read_prop(&q, g)?;
        let imp = Term::mk_imp(p.clone(), g.concl.clone()).map_err(|e| KernelError(e.0))?;
        let side = Goal::with_asms(g.asms.clone(), imp);
        let o = tac.apply(&side)?;
        if !o.goals.is_empty() {
            return fails(format!("`{p}` does not suffice ({} subgoals remain)", o.goals.len()));
        }
        let step = o.just.call(&[])?;
        let rest = Goal::with_asms(g.asms.clone(), p);
        Ok(Outcome::new(vec![rest], move |ths| Ok(d::mp(&step, &ths[0])?)))
    })
}

/// Applies `t` repeatedly to the goal and then to all resulting subgoals
/// until it fails. At most `limit` successful applications.
pub fn repeat(t: Tactic, limit: usize) -> Tactic {
    Tactic::new(move |g| {
        let mut budget = limit;
        repeat_on(&t, g, &mut budget)
    })
}

fn repeat_on(t: &Tactic, g: &Goal, budget: &mut usize) -> Result<Outcome, TacticError> {
    let Ok(o) = t.apply(g) else {
        return Ok(Outcome::unchanged(g));
    };
    if o.goals.len() == 1 && o.goals[0].alpha_eq(g) {
        return Ok(Outcome::unchanged(g));
    }
    if *budget == 0 {
        return fails("rpt: repetition bound exceeded");
    }
    *budget -= 1;
    let mut goals = Vec::new();
    let mut parts = Vec::new();
    for sg in &o.goals {
        let inner = repeat_on(t, sg, budget)?;
        parts.push((inner.goals.len(), inner.just));
        goals.extend(inner.goals);
    }
    let j1 = o.just;
    Ok(Outcome::new(goals, move |ths| {
        let counts: Vec<usize> = parts.iter().map(|p| p.0).collect();
        let groups = split_counts(ths, &counts)?;
        let mids = parts.iter().zip(groups).map(|(p, g)| p.1.call(&g)).collect::<Result<Vec<_>, _>>()?;
        j1.call(&mids)
    }))
}

/// Nat variables free in `sub`, in first-occurrence order.
fn nat_vars(sub: &Goal) -> Vec<Var> {
    let mut out: Vec<Var> = Vec::new();
    for t in sub.all_terms() {
        for v in d::free_vars_ordered(t) {
            if v.sort == Sort::Nat && !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// Checks the LCF validity of `o` for goal `g`: each subgoal is achieved by
/// a hypothesis standing for its universal closure, and the justification must then
/// produce the goal from no other hypotheses than the goal's assumptions.
pub fn check_validity(g: &Goal, o: &Outcome) -> Result<Thm, TacticError> {
    let mut stand_ins = Vec::new();
    let mut closures = Vec::new();
    for sg in &o.goals {
        let mut body = sg.concl.clone();
        for a in sg.asms.iter().rev() {
            body = Term::mk_imp(a.clone(), body).map_err(|e| KernelError(e.0))?;
        }
        let vars = nat_vars(sg);
        let mut closure = body;
        for v in vars.iter().rev() {
            closure = Term::mk_forall(&v.name, closure).map_err(|e| KernelError(e.0))?;
        }
        let mut th = d::assume(&closure)?;
        for v in &vars {
            th = d::spec(&Term::Var(v.clone()), &th)?;
        }
        for _ in &sg.asms {
            th = d::undisch(&th)?;
        }
        closures.push(closure);
        stand_ins.push(th);
    }
    let out = o.just.call(&stand_ins)?;
    if !out.concl().alpha_eq(&g.concl) {
        return Err(TacticError::Invalid(format!("justification proves `{}` instead of `{}`", out.concl(), g.concl)));
    }
    for h in out.hyps() {
        if !g.has_asm(h) && !closures.iter().any(|c| c.alpha_eq(h)) {
            return Err(TacticError::Invalid(format!("justification depends on `{h}`")));
        }
    }
    Ok(out)
}
