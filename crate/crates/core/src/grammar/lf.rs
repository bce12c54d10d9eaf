//! Logical forms: a small simply-typed lambda calculus whose constants
//! build tactic expressions.

use std::fmt;
use std::sync::Arc;

use crate::tactic::expr::{InfixOp, TacticExpr};
use crate::tactic::TacticType;

use super::Category;

/// Semantic values of derivations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sem {
    Expr(TacticExpr),
    /// A single word; becomes a theorem name, numeral or lookup key.
    Token(Arc<str>),
    /// Elements of a list under construction.
    List(Vec<TacticExpr>),
}

impl Sem {
    pub fn expr(&self) -> Option<&TacticExpr> {
        match self {
            Sem::Expr(e) => Some(e),
            _ => None,
        }
    }
}

impl fmt::Display for Sem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sem::Expr(e) => write!(f, "{{{e}}}"),
            Sem::Token(t) => write!(f, "\"{t}\""),
            Sem::List(es) => {
                f.write_str("{")?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prim {
    /// `lookup "sig" tok`: the registry entry named `tok` of type `sig`.
    Lookup(TacticType),
    Gsym,
    Infix(InfixOp),
    /// `nth k t`, `k` a numeral token.
    Nth,
    /// One-element list.
    Single,
    /// `cons x xs`.
    Cons,
    /// Finishes a list: `thmlist xs` or `quotlist xs`. Takes either one
    /// list argument or any number of element arguments.
    ThmList,
    QuotList,
}

impl Prim {
    fn name(self) -> String {
        match self {
            Prim::Lookup(ty) => format!("lookup \"{}\"", ty.signature()),
            Prim::Gsym => "GSYM".into(),
            Prim::Infix(op) => op.symbol().into(),
            Prim::Nth => "nth".into(),
            Prim::Single => "single".into(),
            Prim::Cons => "cons".into(),
            Prim::ThmList => "thmlist".into(),
            Prim::QuotList => "quotlist".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Lf {
    Var(u32),
    Lam(Vec<(u32, Category)>, Arc<Lf>),
    App(Arc<Lf>, Vec<Lf>),
    Prim(Prim),
    Val(Sem),
}

/// Resolves `lookup` constants; `None` when the name has another type or
/// is unknown.
pub trait LookupTable {
    fn lookup(&self, name: &str, ty: TacticType) -> bool;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("logical form type mismatch: {0}")]
pub struct LfTypeMismatch(pub String);

impl Lf {
    /// `λx1 ... xn. body` over the given parameter categories.
    pub fn lam(params: &[Category], body: Lf) -> Lf {
        if params.is_empty() {
            return body;
        }
        Lf::Lam(params.iter().enumerate().map(|(i, c)| (i as u32 + 1, *c)).collect(), Arc::new(body))
    }

    pub fn app(head: Lf, args: Vec<Lf>) -> Lf {
        Lf::App(Arc::new(head), args)
    }

    pub fn identity(c: Category) -> Lf {
        Lf::lam(&[c], Lf::Var(1))
    }

    /// Number of arguments the form expects.
    pub fn arity(&self) -> usize {
        match self {
            Lf::Lam(ps, _) => ps.len(),
            Lf::Prim(Prim::Lookup(_) | Prim::Gsym | Prim::Single) => 1,
            Lf::Prim(Prim::Infix(_) | Prim::Nth | Prim::Cons) => 2,
            _ => 0,
        }
    }

    /// Builds `λ. e` with every sub-expression equal to `holes[i]` replaced
    /// by variable `i + 1`.
    pub fn abstract_expr(e: &TacticExpr, holes: &[TacticExpr]) -> Lf {
        if let Some(i) = holes.iter().position(|h| h == e) {
            return Lf::Var(i as u32 + 1);
        }
        if !holes.iter().any(|h| e.contains(h)) {
            return Lf::Val(Sem::Expr(e.clone()));
        }
        let sub = |x: &TacticExpr| Lf::abstract_expr(x, holes);
        match e {
            TacticExpr::Apply(f, a) => Lf::app(sub(f), vec![sub(a)]),
            TacticExpr::Infix(op, l, r) => Lf::app(Lf::Prim(Prim::Infix(*op)), vec![sub(l), sub(r)]),
            TacticExpr::Gsym(t) => Lf::app(Lf::Prim(Prim::Gsym), vec![sub(t)]),
            TacticExpr::Nth(k, t) => Lf::app(Lf::Prim(Prim::Nth), vec![Lf::Val(Sem::Token(k.to_string().into())), sub(t)]),
            TacticExpr::ThmList(es) => Lf::app(Lf::Prim(Prim::ThmList), es.iter().map(sub).collect()),
            TacticExpr::QuotList(es) => Lf::app(Lf::Prim(Prim::QuotList), es.iter().map(sub).collect()),
            TacticExpr::Lookup(..) | TacticExpr::ThmRef(_) | TacticExpr::Quot(_) => unreachable!("leaf containing a hole"),
        }
    }

    /// Applies the form to argument values and reduces to a value.
    pub fn apply(&self, args: &[Sem], table: &dyn LookupTable) -> Option<Sem> {
        if args.is_empty() {
            return eval(self, &[], table);
        }
        let vals: Vec<Lf> = args.iter().cloned().map(Lf::Val).collect();
        eval(&Lf::App(Arc::new(self.clone()), vals), &[], table)
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lf::Lam(..) | Lf::App(..) => write!(f, "({self})"),
            Lf::Prim(Prim::Lookup(_)) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

/// Call-by-value evaluation; `env[i]` binds variable `i + 1`.
fn eval(lf: &Lf, env: &[Sem], table: &dyn LookupTable) -> Option<Sem> {
    match lf {
        Lf::Var(i) => env.get(*i as usize - 1).cloned(),
        Lf::Val(s) => Some(s.clone()),
        Lf::Lam(..) | Lf::Prim(_) => None,
        Lf::App(head, args) => {
            let vals = args.iter().map(|a| eval(a, env, table)).collect::<Option<Vec<_>>>()?;
            match &**head {
                Lf::Lam(ps, body) => {
                    if ps.len() != vals.len() {
                        return None;
                    }
                    let mut inner = vec![Sem::Token("".into()); ps.iter().map(|p| p.0 as usize).max().unwrap_or(0)];
                    for ((i, _), v) in ps.iter().zip(vals) {
                        inner[*i as usize - 1] = v;
                    }
                    eval(body, &inner, table)
                }
                Lf::Prim(p) => prim(*p, vals, table),
                h => {
                    let mut f = eval(h, env, table)?;
                    for v in vals {
                        let (Sem::Expr(fe), Sem::Expr(a)) = (&f, as_expr(v)?) else { return None };
                        f = Sem::Expr(TacticExpr::apply(fe.clone(), a));
                    }
                    Some(f)
                }
            }
        }
    }
}

/// Bare tokens in expression position are theorem names.
fn as_expr(s: Sem) -> Option<Sem> {
    match s {
        Sem::Token(t) => Some(Sem::Expr(TacticExpr::ThmRef(t))),
        Sem::Expr(_) => Some(s),
        Sem::List(_) => None,
    }
}

fn expr(s: Sem) -> Option<TacticExpr> {
    match as_expr(s)? {
        Sem::Expr(e) => Some(e),
        _ => None,
    }
}

fn prim(p: Prim, mut args: Vec<Sem>, table: &dyn LookupTable) -> Option<Sem> {
    let e = |x| Some(Sem::Expr(x));
    match (p, args.len()) {
        (Prim::Lookup(ty), 1) => {
            let Sem::Token(name) = &args[0] else { return None };
            table.lookup(name, ty).then(|| Sem::Expr(TacticExpr::Lookup(name.clone(), ty)))
        }
        (Prim::Gsym, 1) => e(TacticExpr::gsym(expr(args.pop()?)?)),
        (Prim::Infix(op), 2) => {
            let r = expr(args.pop()?)?;
            let l = expr(args.pop()?)?;
            e(TacticExpr::infix(op, l, r))
        }
        (Prim::Nth, 2) => {
            let t = expr(args.pop()?)?;
            let Sem::Token(k) = args.pop()? else { return None };
            let k: u32 = k.parse().ok().filter(|k| *k > 0)?;
            e(TacticExpr::nth(k, t))
        }
        (Prim::Single, 1) => Some(Sem::List(vec![expr(args.pop()?)?])),
        (Prim::Cons, 2) => {
            let Sem::List(mut rest) = args.pop()? else { return None };
            rest.insert(0, expr(args.pop()?)?);
            Some(Sem::List(rest))
        }
        (Prim::ThmList | Prim::QuotList, _) => {
            let items = match args.as_slice() {
                [Sem::List(xs)] => xs.clone(),
                _ => args.into_iter().map(expr).collect::<Option<Vec<_>>>()?,
            };
            e(if p == Prim::ThmList { TacticExpr::ThmList(items) } else { TacticExpr::QuotList(items) })
        }
        _ => None,
    }
}

impl fmt::Display for Lf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lf::Var(i) => write!(f, "x{i}"),
            Lf::Lam(ps, body) => {
                f.write_str("λ")?;
                for (i, (v, _)) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "x{v}")?;
                }
                write!(f, ". {body}")
            }
            Lf::App(h, args) => {
                h.fmt_atom(f)?;
                for a in args {
                    f.write_str(" ")?;
                    a.fmt_atom(f)?;
                }
                Ok(())
            }
            Lf::Prim(p) => f.write_str(&p.name()),
            Lf::Val(s) => write!(f, "{s}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use TacticType as T;

    struct Table;
    impl LookupTable for Table {
        fn lookup(&self, name: &str, ty: TacticType) -> bool {
            matches!((name, ty), ("fs", T::ThmListTac) | ("gen_tac" | "strip_tac", T::Tac))
        }
    }

    #[test]
    fn application_builds_apply_nodes() {
        let lf = Lf::lam(&[Category::ThmListTac, Category::ThmList], Lf::app(Lf::Var(1), vec![Lf::Var(2)]));
        assert_eq!(lf.to_string(), "λx1 x2. x1 x2");
        let fs = Sem::Expr(TacticExpr::lookup("fs", T::ThmListTac));
        let list = Sem::Expr(TacticExpr::ThmList(vec![TacticExpr::thm("A")]));
        let out = lf.apply(&[fs, list], &Table).unwrap();
        assert_eq!(out.expr().unwrap().render(), "fs [ A ]");
    }

    #[test]
    fn identity_and_lookup() {
        let id = Lf::identity(Category::Tactic);
        let g = Sem::Expr(TacticExpr::lookup("gen_tac", T::Tac));
        assert_eq!(id.apply(std::slice::from_ref(&g), &Table), Some(g));
        let look = Lf::Prim(Prim::Lookup(T::Tac));
        assert_eq!(
            look.apply(&[Sem::Token("strip_tac".into())], &Table),
            Some(Sem::Expr(TacticExpr::lookup("strip_tac", T::Tac)))
        );
        assert_eq!(look.apply(&[Sem::Token("fs".into())], &Table), None);
        assert_eq!(look.to_string(), "lookup \"tactic\"");
    }

    #[test]
    fn abstraction_substitutes_every_occurrence() {
        let a = TacticExpr::ThmList(vec![TacticExpr::thm("A")]);
        let fs = |l: TacticExpr| TacticExpr::apply(TacticExpr::lookup("fs", T::ThmListTac), l);
        let d = TacticExpr::infix(InfixOp::Orelse, fs(a.clone()), fs(a.clone()));
        let lf = Lf::lam(&[Category::ThmList], Lf::abstract_expr(&d, &[a]));
        let b = TacticExpr::ThmList(vec![TacticExpr::thm("B"), TacticExpr::thm("C")]);
        let out = lf.apply(&[Sem::Expr(b.clone())], &Table).unwrap();
        assert_eq!(out, Sem::Expr(TacticExpr::infix(InfixOp::Orelse, fs(b.clone()), fs(b))));
    }
}
