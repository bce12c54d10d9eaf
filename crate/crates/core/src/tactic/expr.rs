//! Tactic expressions: the meaning of a parsed sentence, and their
//! concrete low-level syntax.

use std::fmt;
use std::sync::Arc;

use super::types::TacticType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InfixOp {
    Then,
    Orelse,
    /// `t1 \\ t2`: `t2` acts on the first subgoal of `t1` (or the one
    /// selected with `NTH_GOAL`).
    ThenLt,
    By,
    SufficesBy,
}

impl InfixOp {
    pub const ALL: [InfixOp; 5] = [InfixOp::ThenLt, InfixOp::Then, InfixOp::Orelse, InfixOp::By, InfixOp::SufficesBy];

    pub fn symbol(self) -> &'static str {
        match self {
            InfixOp::Then => "THEN",
            InfixOp::Orelse => "ORELSE",
            InfixOp::ThenLt => "\\\\",
            InfixOp::By => "by",
            InfixOp::SufficesBy => "suffices_by",
        }
    }

    /// Binding strength; larger binds tighter. All infixes associate left.
    pub fn precedence(self) -> u8 {
        match self {
            InfixOp::ThenLt => 1,
            InfixOp::Then => 2,
            InfixOp::Orelse => 3,
            InfixOp::By | InfixOp::SufficesBy => 4,
        }
    }

    pub fn left_type(self) -> TacticType {
        match self {
            InfixOp::By | InfixOp::SufficesBy => TacticType::Quot,
            _ => TacticType::Tac,
        }
    }

    pub fn from_symbol(s: &str) -> Option<InfixOp> {
        InfixOp::ALL.into_iter().find(|op| op.symbol() == s)
    }
}

/// Precedence of an expression that is not an unparenthesized infix.
pub const ATOM_PRECEDENCE: u8 = u8::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TacticExpr {
    Lookup(Arc<str>, TacticType),
    ThmRef(Arc<str>),
    Gsym(Arc<TacticExpr>),
    ThmList(Vec<TacticExpr>),
    /// Quotation text with whitespace runs collapsed.
    Quot(Arc<str>),
    QuotList(Vec<TacticExpr>),
    Apply(Arc<TacticExpr>, Arc<TacticExpr>),
    Infix(InfixOp, Arc<TacticExpr>, Arc<TacticExpr>),
    /// Selects the `k`-th (1-based) open subgoal as the target of a `\\` step.
    Nth(u32, Arc<TacticExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("type mismatch: {0}")]
pub struct TypeMismatch(pub String);

/// Collapses whitespace runs to single spaces and trims.
pub fn normalize_quotation(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

impl TacticExpr {
    pub fn lookup(name: &str, ty: TacticType) -> TacticExpr {
        TacticExpr::Lookup(name.into(), ty)
    }

    pub fn thm(name: &str) -> TacticExpr {
        TacticExpr::ThmRef(name.into())
    }

    pub fn quot(text: &str) -> TacticExpr {
        TacticExpr::Quot(normalize_quotation(text).into())
    }

    pub fn apply(f: TacticExpr, a: TacticExpr) -> TacticExpr {
        TacticExpr::Apply(Arc::new(f), Arc::new(a))
    }

    pub fn infix(op: InfixOp, l: TacticExpr, r: TacticExpr) -> TacticExpr {
        TacticExpr::Infix(op, Arc::new(l), Arc::new(r))
    }

    pub fn gsym(t: TacticExpr) -> TacticExpr {
        TacticExpr::Gsym(Arc::new(t))
    }

    pub fn nth(k: u32, t: TacticExpr) -> TacticExpr {
        TacticExpr::Nth(k, Arc::new(t))
    }

    pub fn type_of(&self) -> Result<TacticType, TypeMismatch> {
        use TacticType as T;
        match self {
            TacticExpr::Lookup(_, ty) => Ok(*ty),
            TacticExpr::ThmRef(_) => Ok(T::Thm),
            TacticExpr::Gsym(e) => {
                expect(e, T::Thm)?;
                Ok(T::Thm)
            }
            TacticExpr::ThmList(es) => {
                for e in es {
                    expect(e, T::Thm)?;
                }
                Ok(T::ThmList)
            }
            TacticExpr::Quot(_) => Ok(T::Quot),
            TacticExpr::QuotList(es) => {
                for e in es {
                    expect(e, T::Quot)?;
                }
                Ok(T::QuotList)
            }
            TacticExpr::Apply(f, a) => {
                let ft = f.type_of()?;
                let Some((dom, cod)) = ft.arrow() else {
                    return Err(TypeMismatch(format!("`{f}` of type {ft} is not a function")));
                };
                expect(a, dom)?;
                Ok(cod)
            }
            TacticExpr::Infix(op, l, r) => {
                expect(l, op.left_type())?;
                expect(r, T::Tac)?;
                Ok(T::Tac)
            }
            TacticExpr::Nth(k, t) => {
                if *k == 0 {
                    return Err(TypeMismatch("NTH_GOAL counts from 1".into()));
                }
                expect(t, T::Tac)?;
                Ok(T::Tac)
            }
        }
    }

    /// The precedence of the outermost construct when rendered.
    pub fn precedence(&self) -> u8 {
        match self {
            TacticExpr::Infix(op, ..) => op.precedence(),
            _ => ATOM_PRECEDENCE,
        }
    }

    /// Renders the low-level script text.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.write(&mut s);
        s
    }

    fn write(&self, out: &mut String) {
        match self {
            TacticExpr::Lookup(n, _) | TacticExpr::ThmRef(n) => out.push_str(n),
            TacticExpr::Gsym(e) => {
                out.push_str("GSYM ");
                e.write(out);
            }
            TacticExpr::ThmList(es) | TacticExpr::QuotList(es) => {
                if es.is_empty() {
                    out.push_str("[ ]");
                    return;
                }
                out.push_str("[ ");
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    e.write(out);
                }
                out.push_str(" ]");
            }
            TacticExpr::Quot(q) => {
                out.push_str("` ");
                out.push_str(q);
                out.push_str(" `");
            }
            TacticExpr::Apply(f, a) => {
                f.write(out);
                out.push(' ');
                a.write_arg(out);
            }
            TacticExpr::Infix(op, l, r) => {
                let p = op.precedence();
                write_paren(l, l.precedence() < p, out);
                out.push(' ');
                out.push_str(op.symbol());
                out.push(' ');
                let force = matches!(op, InfixOp::By | InfixOp::SufficesBy);
                write_paren(r, force || r.precedence() <= p, out);
            }
            TacticExpr::Nth(k, t) => {
                out.push_str(&format!("NTH_GOAL {k} "));
                t.write_arg(out);
            }
        }
    }

    fn write_arg(&self, out: &mut String) {
        let simple = matches!(
            self,
            TacticExpr::Lookup(..)
                | TacticExpr::ThmRef(_)
                | TacticExpr::ThmList(_)
                | TacticExpr::Quot(_)
                | TacticExpr::QuotList(_)
        );
        write_paren(self, !simple, out);
    }

    /// Sub-expressions in argument position (applied arguments and infix
    /// operands), outermost first, left to right.
    pub fn arguments(&self) -> Vec<&TacticExpr> {
        let mut out = Vec::new();
        self.collect_arguments(&mut out);
        out
    }

    fn collect_arguments<'a>(&'a self, out: &mut Vec<&'a TacticExpr>) {
        match self {
            TacticExpr::Apply(f, a) => {
                f.collect_arguments(out);
                out.push(a);
                a.collect_arguments(out);
            }
            TacticExpr::Infix(_, l, r) => {
                out.push(l);
                l.collect_arguments(out);
                out.push(r);
                r.collect_arguments(out);
            }
            TacticExpr::Nth(_, t) => {
                out.push(t);
                t.collect_arguments(out);
            }
            TacticExpr::Gsym(e) => e.collect_arguments(out),
            TacticExpr::ThmList(es) | TacticExpr::QuotList(es) => {
                for e in es {
                    e.collect_arguments(out);
                }
            }
            TacticExpr::Lookup(..) | TacticExpr::ThmRef(_) | TacticExpr::Quot(_) => {}
        }
    }

    /// Replaces every sub-expression equal to `from` by `to`.
    pub fn replace(&self, from: &TacticExpr, to: &TacticExpr) -> TacticExpr {
        if self == from {
            return to.clone();
        }
        let r = |e: &Arc<TacticExpr>| Arc::new(e.replace(from, to));
        match self {
            TacticExpr::Gsym(e) => TacticExpr::Gsym(r(e)),
            TacticExpr::ThmList(es) => TacticExpr::ThmList(es.iter().map(|e| e.replace(from, to)).collect()),
            TacticExpr::QuotList(es) => TacticExpr::QuotList(es.iter().map(|e| e.replace(from, to)).collect()),
            TacticExpr::Apply(f, a) => TacticExpr::Apply(r(f), r(a)),
            TacticExpr::Infix(op, l, rr) => TacticExpr::Infix(*op, r(l), r(rr)),
            TacticExpr::Nth(k, t) => TacticExpr::Nth(*k, r(t)),
            TacticExpr::Lookup(..) | TacticExpr::ThmRef(_) | TacticExpr::Quot(_) => self.clone(),
        }
    }

    pub fn contains(&self, needle: &TacticExpr) -> bool {
        self == needle || self.children_contain(needle)
    }

    fn children_contain(&self, needle: &TacticExpr) -> bool {
        match self {
            TacticExpr::Gsym(e) | TacticExpr::Nth(_, e) => e.contains(needle),
            TacticExpr::ThmList(es) | TacticExpr::QuotList(es) => es.iter().any(|e| e.contains(needle)),
            TacticExpr::Apply(a, b) | TacticExpr::Infix(_, a, b) => a.contains(needle) || b.contains(needle),
            TacticExpr::Lookup(..) | TacticExpr::ThmRef(_) | TacticExpr::Quot(_) => false,
        }
    }
}

fn write_paren(e: &TacticExpr, paren: bool, out: &mut String) {
    if paren {
        out.push_str("( ");
        e.write(out);
        out.push_str(" )");
    } else {
        e.write(out);
    }
}

fn expect(e: &TacticExpr, want: TacticType) -> Result<(), TypeMismatch> {
    let got = e.type_of()?;
    if got == want {
        Ok(())
    } else {
        Err(TypeMismatch(format!("`{e}` has type {got}, expected {want}")))
    }
}

impl fmt::Display for TacticExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use TacticType as T;

    fn fs(thms: &[&str]) -> TacticExpr {
        TacticExpr::apply(
            TacticExpr::lookup("fs", T::ThmListTac),
            TacticExpr::ThmList(thms.iter().map(|t| TacticExpr::thm(t)).collect()),
        )
    }

    #[test]
    fn renders_lists_and_applications() {
        assert_eq!(fs(&["LE_LT"]).render(), "fs [ LE_LT ]");
        assert_eq!(fs(&[]).render(), "fs [ ]");
        assert_eq!(fs(&["A", "B"]).render(), "fs [ A, B ]");
        assert_eq!(TacticExpr::lookup("gen_tac", T::Tac).render(), "gen_tac");
    }

    #[test]
    fn renders_by_with_parenthesized_body() {
        let e = TacticExpr::infix(InfixOp::By, TacticExpr::quot("q  <=   n"), fs(&[]));
        assert_eq!(e.render(), "` q <= n ` by ( fs [ ] )");
        assert_eq!(e.type_of().unwrap(), T::Tac);
    }

    #[test]
    fn infix_parenthesization_follows_precedence() {
        let a = TacticExpr::lookup("a_tac", T::Tac);
        let b = TacticExpr::lookup("b_tac", T::Tac);
        let c = TacticExpr::lookup("c_tac", T::Tac);
        let then_ab = TacticExpr::infix(InfixOp::Then, a.clone(), b.clone());
        let e = TacticExpr::infix(InfixOp::Orelse, then_ab.clone(), c.clone());
        assert_eq!(e.render(), "( a_tac THEN b_tac ) ORELSE c_tac");
        let e = TacticExpr::infix(InfixOp::Then, then_ab, c.clone());
        assert_eq!(e.render(), "a_tac THEN b_tac THEN c_tac");
        let e = TacticExpr::infix(InfixOp::Then, a, TacticExpr::infix(InfixOp::Then, b, c));
        assert_eq!(e.render(), "a_tac THEN ( b_tac THEN c_tac )");
    }

    #[test]
    fn ill_typed_application_is_rejected() {
        let e = TacticExpr::apply(TacticExpr::lookup("fs", T::ThmListTac), TacticExpr::thm("X"));
        assert!(e.type_of().is_err());
        let e = TacticExpr::apply(TacticExpr::lookup("gen_tac", T::Tac), TacticExpr::thm("X"));
        assert!(e.type_of().is_err());
    }

    #[test]
    fn arguments_are_collected_in_order() {
        let e = TacticExpr::infix(InfixOp::Then, fs(&["A"]), TacticExpr::lookup("all_tac", T::Tac));
        let args: Vec<String> = e.arguments().iter().map(|a| a.render()).collect();
        assert_eq!(args, vec!["fs [ A ]", "[ A ]", "all_tac"]);
    }
}
