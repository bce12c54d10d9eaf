//! Concrete syntax for terms: the language written inside quotations.
//!
//! Precedence, loosest first: `<=>`, `==>`, `\/`, `/\`, `~`, relations
//! (`=`, `<>`, `<`, `<=`), `+`, `*`, prefix `SUC`/`sum`. Connectives are
//! right associative, arithmetic is left associative. Quantifiers are
//! written `!x y. body` and `?x. body` and extend as far right as possible.

use std::collections::BTreeMap;
use std::fmt;

use super::term::{Conn, NatOp, Pred, Quant, Sort, SortError, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Sort(#[from] SortError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(&'static str),
}

const SYMBOLS: &[&str] = &[
    "<=>", "==>", "/\\", "\\/", "<>", "<=", "(", ")", "!", "?", ".", "~", "=", "<", "+", "*",
];

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, TermError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i].parse::<u64>().map_err(|_| TermError::Syntax {
                pos: start,
                msg: "numeral too large".into(),
            })?;
            if n > 10_000 {
                return Err(TermError::Syntax { pos: start, msg: "numeral too large".into() });
            }
            out.push((start, Tok::Num(n)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
            continue;
        }
        for s in SYMBOLS {
            if src[i..].starts_with(s) {
                out.push((i, Tok::Sym(s)));
                i += s.len();
                continue 'outer;
            }
        }
        return Err(TermError::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Ast {
    Var(String),
    Num(u64),
    True,
    False,
    Suc(Box<Ast>),
    Sum(Box<Ast>),
    Op(NatOp, Box<Ast>, Box<Ast>),
    /// `=` before sort resolution: nat equality or bool iff.
    Eq(Box<Ast>, Box<Ast>),
    Neq(Box<Ast>, Box<Ast>),
    Rel(Pred, Box<Ast>, Box<Ast>),
    Not(Box<Ast>),
    Bin(Conn, Box<Ast>, Box<Ast>),
    Quant(Quant, Vec<String>, Box<Ast>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, TermError> {
        Err(TermError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Ast, TermError> {
        let lhs = self.imp()?;
        if self.eat("<=>") {
            let rhs = self.iff()?;
            return Ok(Ast::Bin(Conn::Iff, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Ast, TermError> {
        let lhs = self.or()?;
        if self.eat("==>") {
            let rhs = self.imp()?;
            return Ok(Ast::Bin(Conn::Imp, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Ast, TermError> {
        let lhs = self.and()?;
        if self.eat("\\/") {
            let rhs = self.or()?;
            return Ok(Ast::Bin(Conn::Or, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Ast, TermError> {
        let lhs = self.not()?;
        if self.eat("/\\") {
            let rhs = self.and()?;
            return Ok(Ast::Bin(Conn::And, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn not(&mut self) -> Result<Ast, TermError> {
        if self.eat("~") {
            return Ok(Ast::Not(Box::new(self.not()?)));
        }
        self.rel()
    }

    fn rel(&mut self) -> Result<Ast, TermError> {
        let lhs = self.sum()?;
        let op = match self.peek() {
            Some(Tok::Sym(s @ ("=" | "<>" | "<" | "<="))) => *s,
            _ => return Ok(lhs),
        };
        self.pos += 1;
        let rhs = Box::new(self.sum()?);
        let lhs = Box::new(lhs);
        Ok(match op {
            "=" => Ast::Eq(lhs, rhs),
            "<>" => Ast::Neq(lhs, rhs),
            "<" => Ast::Rel(Pred::Lt, lhs, rhs),
            _ => Ast::Rel(Pred::Le, lhs, rhs),
        })
    }

    fn sum(&mut self) -> Result<Ast, TermError> {
        let mut lhs = self.prod()?;
        while self.eat("+") {
            let rhs = self.prod()?;
            lhs = Ast::Op(NatOp::Add, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Result<Ast, TermError> {
        let mut lhs = self.app()?;
        while self.eat("*") {
            let rhs = self.app()?;
            lhs = Ast::Op(NatOp::Mul, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn app(&mut self) -> Result<Ast, TermError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "SUC" => {
                self.pos += 1;
                Ok(Ast::Suc(Box::new(self.app()?)))
            }
            Some(Tok::Ident(s)) if s == "sum" => {
                self.pos += 1;
                Ok(Ast::Sum(Box::new(self.app()?)))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Ast, TermError> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of term"),
        };
        match tok {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(Ast::Num(n))
            }
            Tok::Ident(s) => {
                self.pos += 1;
                match s.as_str() {
                    "T" => Ok(Ast::True),
                    "F" => Ok(Ast::False),
                    _ => Ok(Ast::Var(s)),
                }
            }
            Tok::Sym("(") => {
                self.pos += 1;
                let inner = self.iff()?;
                if !self.eat(")") {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Tok::Sym(q @ ("!" | "?")) => {
                self.pos += 1;
                let quant = if q == "!" { Quant::Forall } else { Quant::Exists };
                let mut names = Vec::new();
                while let Some(Tok::Ident(x)) = self.peek() {
                    if is_reserved(x) {
                        return self.err(format!("`{x}` cannot be bound"));
                    }
                    names.push(x.clone());
                    self.pos += 1;
                }
                if names.is_empty() {
                    return self.err("expected a bound variable");
                }
                if !self.eat(".") {
                    return self.err("expected `.` after bound variables");
                }
                let body = self.iff()?;
                Ok(Ast::Quant(quant, names, Box::new(body)))
            }
            Tok::Sym(s) => self.err(format!("unexpected `{s}`")),
        }
    }
}

fn is_reserved(x: &str) -> bool {
    matches!(x, "T" | "F" | "SUC" | "sum")
}

/// Sort environment of free variables, e.g. those of the goal a quotation
/// is read against.
pub type SortEnv = BTreeMap<String, Sort>;

struct Elab<'a> {
    env: SortEnv,
    outer: &'a SortEnv,
}

impl Elab<'_> {
    fn known(&self, name: &str, scope: &[String]) -> Option<Sort> {
        if scope.iter().any(|s| s == name) {
            return Some(Sort::Nat);
        }
        self.env.get(name).or_else(|| self.outer.get(name)).copied()
    }

    fn hint(&self, a: &Ast, scope: &[String]) -> Option<Sort> {
        match a {
            Ast::Var(x) => self.known(x, scope),
            Ast::Num(_) | Ast::Suc(_) | Ast::Sum(_) | Ast::Op(..) => Some(Sort::Nat),
            _ => Some(Sort::Bool),
        }
    }

    fn record(&mut self, x: &str, s: Sort, scope: &[String]) -> Result<bool, TermError> {
        match self.known(x, scope) {
            Some(prev) if prev != s => Err(SortError(format!("variable `{x}` used at both {prev} and {s}")).into()),
            Some(_) => Ok(false),
            None => {
                self.env.insert(x.to_string(), s);
                Ok(true)
            }
        }
    }

    /// One constraint-propagation pass; returns whether anything was learned.
    fn infer(&mut self, a: &Ast, want: Option<Sort>, scope: &mut Vec<String>) -> Result<bool, TermError> {
        Ok(match a {
            Ast::Var(x) => match want {
                Some(s) => self.record(x, s, scope)?,
                None => false,
            },
            Ast::Num(_) | Ast::True | Ast::False => false,
            Ast::Suc(x) | Ast::Sum(x) => self.infer(x, Some(Sort::Nat), scope)?,
            Ast::Op(_, x, y) | Ast::Neq(x, y) | Ast::Rel(_, x, y) => {
                self.infer(x, Some(Sort::Nat), scope)? | self.infer(y, Some(Sort::Nat), scope)?
            }
            Ast::Eq(x, y) => {
                let s = self.hint(x, scope).or_else(|| self.hint(y, scope));
                self.infer(x, s, scope)? | self.infer(y, s, scope)?
            }
            Ast::Not(x) => self.infer(x, Some(Sort::Bool), scope)?,
            Ast::Bin(_, x, y) => self.infer(x, Some(Sort::Bool), scope)? | self.infer(y, Some(Sort::Bool), scope)?,
            Ast::Quant(_, xs, body) => {
                let n = scope.len();
                scope.extend(xs.iter().cloned());
                let r = self.infer(body, Some(Sort::Bool), scope)?;
                scope.truncate(n);
                r
            }
        })
    }

    fn build(&self, a: &Ast, scope: &mut Vec<String>) -> Result<Term, TermError> {
        Ok(match a {
            Ast::Var(x) => Term::var(x, self.known(x, scope).unwrap_or(Sort::Nat)),
            Ast::Num(n) => Term::numeral(*n),
            Ast::True => Term::True,
            Ast::False => Term::False,
            Ast::Suc(x) => Term::mk_suc(self.build(x, scope)?)?,
            Ast::Sum(x) => Term::mk_sum(self.build(x, scope)?)?,
            Ast::Op(op, x, y) => Term::mk_op(*op, self.build(x, scope)?, self.build(y, scope)?)?,
            Ast::Eq(x, y) => Term::mk_equiv(self.build(x, scope)?, self.build(y, scope)?)?,
            Ast::Neq(x, y) => Term::mk_not(Term::mk_eq(self.build(x, scope)?, self.build(y, scope)?)?)?,
            Ast::Rel(p, x, y) => Term::mk_rel(*p, self.build(x, scope)?, self.build(y, scope)?)?,
            Ast::Not(x) => Term::mk_not(self.build(x, scope)?)?,
            Ast::Bin(c, x, y) => Term::mk_bin(*c, self.build(x, scope)?, self.build(y, scope)?)?,
            Ast::Quant(q, xs, body) => {
                let n = scope.len();
                scope.extend(xs.iter().cloned());
                let mut t = self.build(body, scope)?;
                scope.truncate(n);
                for x in xs.iter().rev() {
                    t = Term::mk_quant(*q, x, t)?;
                }
                t
            }
        })
    }
}

/// Parses a term, resolving the sorts of free variables from usage, then
/// from `env`, defaulting to nat. `expected` is the sort of the whole term.
pub fn parse_term_in(src: &str, expected: Option<Sort>, env: &SortEnv) -> Result<Term, TermError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let ast = p.iff()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    let mut el = Elab { env: SortEnv::new(), outer: env };
    let top = expected.or_else(|| match &ast {
        Ast::Var(_) => None,
        other => el.hint(other, &[]),
    });
    for _ in 0..8 {
        if !el.infer(&ast, top, &mut Vec::new())? {
            break;
        }
    }
    let t = el.build(&ast, &mut Vec::new())?;
    if let Some(s) = expected {
        if t.sort() != s {
            return Err(SortError(format!("expected a {s} term, found `{t}`")).into());
        }
    }
    Ok(t)
}

/// Parses a proposition (a bool term) with no outside variable context.
pub fn parse_term(src: &str) -> Result<Term, TermError> {
    parse_term_in(src, Some(Sort::Bool), &SortEnv::new())
}

pub fn sort_env<'a>(terms: impl IntoIterator<Item = &'a Term>) -> SortEnv {
    let mut env = SortEnv::new();
    for t in terms {
        for v in t.free_vars() {
            env.insert(v.name.to_string(), v.sort);
        }
    }
    env
}

const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const NOT: u8 = 5;
const REL: u8 = 6;
const ADD: u8 = 7;
const MUL: u8 = 8;
const APP: u8 = 9;

fn write_term(t: &Term, ctx: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if let Some(n) = t.as_numeral() {
        return write!(f, "{n}");
    }
    let paren = |prec: u8, f: &mut fmt::Formatter<'_>, body: &dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result| {
        if prec < ctx {
            f.write_str("(")?;
            body(f)?;
            f.write_str(")")
        } else {
            body(f)
        }
    };
    match t {
        Term::Var(v) => f.write_str(&v.name),
        Term::Zero => f.write_str("0"),
        Term::True => f.write_str("T"),
        Term::False => f.write_str("F"),
        Term::Suc(a) => paren(APP, f, &|f| {
            f.write_str("SUC ")?;
            write_term(a, APP + 1, f)
        }),
        Term::Sum(a) => paren(APP, f, &|f| {
            f.write_str("sum ")?;
            write_term(a, APP + 1, f)
        }),
        Term::Op(op, a, b) => {
            let (prec, sym) = match op {
                NatOp::Add => (ADD, " + "),
                NatOp::Mul => (MUL, " * "),
            };
            paren(prec, f, &|f| {
                write_term(a, prec, f)?;
                f.write_str(sym)?;
                write_term(b, prec + 1, f)
            })
        }
        Term::Rel(p, a, b) => {
            let sym = match p {
                Pred::Eq => " = ",
                Pred::Lt => " < ",
                Pred::Le => " <= ",
            };
            paren(REL, f, &|f| {
                write_term(a, ADD, f)?;
                f.write_str(sym)?;
                write_term(b, ADD, f)
            })
        }
        Term::Not(a) => {
            if let Term::Rel(Pred::Eq, x, y) = &**a {
                return paren(REL, f, &|f| {
                    write_term(x, ADD, f)?;
                    f.write_str(" <> ")?;
                    write_term(y, ADD, f)
                });
            }
            paren(NOT, f, &|f| {
                f.write_str("~")?;
                write_term(a, NOT, f)
            })
        }
        Term::Bin(c, a, b) => {
            let (prec, sym) = match c {
                Conn::Iff => (IFF, " <=> "),
                Conn::Imp => (IMP, " ==> "),
                Conn::Or => (OR, " \\/ "),
                Conn::And => (AND, " /\\ "),
            };
            paren(prec, f, &|f| {
                write_term(a, prec + 1, f)?;
                f.write_str(sym)?;
                write_term(b, prec, f)
            })
        }
        Term::Quant(..) => {
            let sym = if matches!(t, Term::Quant(Quant::Forall, ..)) { "!" } else { "?" };
            let body_fn = |f: &mut fmt::Formatter<'_>| {
                let mut names = Vec::new();
                let mut cur = t;
                let q = match t {
                    Term::Quant(q, ..) => *q,
                    _ => unreachable!(),
                };
                while let Term::Quant(q2, x, body) = cur {
                    if *q2 != q {
                        break;
                    }
                    names.push(x.to_string());
                    cur = body;
                }
                write!(f, "{sym}{}. ", names.join(" "))?;
                write_term(cur, 0, f)
            };
            if ctx > 0 {
                f.write_str("(")?;
                body_fn(f)?;
                f.write_str(")")
            } else {
                body_fn(f)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn literal_readings() {
        assert_eq!(p("0 = 0"), Term::mk_eq(Term::Zero, Term::Zero).unwrap());
        let n = Term::nat_var("n");
        let expect =
            Term::mk_forall("n", Term::mk_eq(Term::mk_add(n.clone(), Term::Zero).unwrap(), n).unwrap()).unwrap();
        assert_eq!(p("!n. n + 0 = n"), expect);
    }

    #[test]
    fn numeral_desugars_to_suc_chain() {
        let two = parse_term_in("2", Some(Sort::Nat), &SortEnv::new()).unwrap();
        let hand = Term::Suc(Arc::new(Term::Suc(Arc::new(Term::Zero))));
        assert_eq!(two, hand);
        assert_eq!(two.to_string(), "2");
    }

    #[test]
    fn precedence() {
        assert_eq!(p("~p /\\ q \\/ r ==> s <=> t").to_string(), "~p /\\ q \\/ r ==> s <=> t");
        let t = p("a + b * c = d");
        assert!(matches!(t, Term::Rel(Pred::Eq, ..)));
        assert_eq!(p("(a + b) * c = c * (a + b)").to_string(), "(a + b) * c = c * (a + b)");
        assert_eq!(p("a + (b + c) = a + b + c").to_string(), "a + (b + c) = a + b + c");
    }

    #[test]
    fn bool_variables_are_inferred() {
        let t = p("p ==> p");
        assert_eq!(t.free_vars().into_iter().next().unwrap().sort, Sort::Bool);
        let t = p("(p = q) /\\ p /\\ x = y");
        let fv: Vec<_> = t.free_vars().into_iter().collect();
        assert!(fv.iter().any(|v| &*v.name == "p" && v.sort == Sort::Bool));
        assert!(fv.iter().any(|v| &*v.name == "x" && v.sort == Sort::Nat));
        assert!(matches!(t, Term::Bin(Conn::And, ..)));
    }

    #[test]
    fn quantifiers_extend_right() {
        let t = p("!x y. x + y = y + x");
        assert_eq!(t.to_string(), "!x y. x + y = y + x");
        assert_eq!(p("p /\\ (!x. x = x)").to_string(), "p /\\ (!x. x = x)");
        assert_eq!(p("~(a = b)").to_string(), "a <> b");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_term("n +"), Err(TermError::Syntax { .. })));
        assert!(matches!(parse_term("SUC p /\\ p"), Err(TermError::Sort(_))));
        assert!(matches!(parse_term("(a = b"), Err(TermError::Syntax { .. })));
        assert!(parse_term("x + 1").is_err());
    }

    #[test]
    fn env_supplies_sorts() {
        let mut env = SortEnv::new();
        env.insert("q".into(), Sort::Bool);
        let t = parse_term_in("q", Some(Sort::Bool), &env).unwrap();
        assert_eq!(t, Term::bool_var("q"));
    }
}
