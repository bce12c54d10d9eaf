//! The semantic grammar: categories, rules with logical forms, and
//! immutable grammar snapshots.

pub mod core;
pub mod lf;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::tactic::expr::TacticExpr;
use crate::tactic::TacticType;

pub use self::core::core_grammar;
pub use lf::{Lf, LookupTable, Prim, Sem};

/// Grammar nonterminals. Functional categories mirror tactic types;
/// `Thms` and `Quots` hold list elements; `Token` matches any word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    Root,
    Tactic,
    Thm,
    ThmList,
    Quot,
    QuotList,
    ThmTac,
    ThmListTac,
    TacTac,
    QuotTac,
    ThmTacTac,
    TacTacTac,
    QuotThmTacThmTac,
    QuotListThmTacThmTac,
    QuotThmTacTac,
    Thms,
    Quots,
    Token,
}

impl Category {
    pub const ALL: [Category; 18] = [
        Category::Root,
        Category::Tactic,
        Category::Thm,
        Category::ThmList,
        Category::Quot,
        Category::QuotList,
        Category::ThmTac,
        Category::ThmListTac,
        Category::TacTac,
        Category::QuotTac,
        Category::ThmTacTac,
        Category::TacTacTac,
        Category::QuotThmTacThmTac,
        Category::QuotListThmTacThmTac,
        Category::QuotThmTacTac,
        Category::Thms,
        Category::Quots,
        Category::Token,
    ];

    /// Categories whose spans can become arguments of induced rules.
    pub const ARGUMENTS: [Category; 5] =
        [Category::Thm, Category::ThmList, Category::Quot, Category::QuotList, Category::Tactic];

    pub fn name(self) -> &'static str {
        match self {
            Category::Root => "ROOT",
            Category::Tactic => "TACTIC",
            Category::Thms => "THMS",
            Category::Quots => "QUOTS",
            Category::Token => "TOKEN",
            c => c.value_type().expect("typed category").tag(),
        }
    }

    pub fn from_name(s: &str) -> Option<Category> {
        Category::ALL.into_iter().find(|c| c.name() == s)
    }

    /// The tactic type of values of this category.
    pub fn value_type(self) -> Option<TacticType> {
        use TacticType as T;
        Some(match self {
            Category::Tactic => T::Tac,
            Category::Thm => T::Thm,
            Category::ThmList => T::ThmList,
            Category::Quot => T::Quot,
            Category::QuotList => T::QuotList,
            Category::ThmTac => T::ThmTac,
            Category::ThmListTac => T::ThmListTac,
            Category::TacTac => T::TacTac,
            Category::QuotTac => T::QuotTac,
            Category::ThmTacTac => T::ThmTacTac,
            Category::TacTacTac => T::TacTacTac,
            Category::QuotThmTacThmTac => T::QuotThmTacThmTac,
            Category::QuotListThmTacThmTac => T::QuotListThmTacThmTac,
            Category::QuotThmTacTac => T::QuotThmTacTac,
            Category::Root | Category::Thms | Category::Quots | Category::Token => return None,
        })
    }

    pub fn of_type(ty: TacticType) -> Option<Category> {
        Category::ALL.into_iter().find(|c| c.value_type() == Some(ty))
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Right-hand-side items.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// A word or punctuation token.
    Word(Arc<str>),
    /// A quotation token with this (normalized) interior.
    Quoted(Arc<str>),
    /// Any quotation token.
    AnyQuotation,
    Cat(Category),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Word(w) => f.write_str(w),
            Symbol::Quoted(q) => write!(f, "'{q}'"),
            Symbol::AnyQuotation => f.write_str("<quotation>"),
            Symbol::Cat(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Core,
    Induced,
    Custom,
    Library(Arc<str>),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Core => f.write_str("core"),
            Source::Induced => f.write_str("induced"),
            Source::Custom => f.write_str("custom"),
            Source::Library(n) => write!(f, "library({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Category,
    pub rhs: Vec<Symbol>,
    pub lf: Lf,
    pub source: Source,
}

impl Rule {
    pub fn new(lhs: Category, rhs: Vec<Symbol>, lf: Lf, source: Source) -> Rule {
        Rule { lhs, rhs, lf, source }
    }

    /// Categories of the logical form's parameters: one per category
    /// symbol, and `QUOT` for a quotation placeholder.
    pub fn params(&self) -> impl Iterator<Item = Category> + '_ {
        self.rhs.iter().filter_map(|s| match s {
            Symbol::Cat(c) => Some(*c),
            Symbol::AnyQuotation => Some(Category::Quot),
            _ => None,
        })
    }

    /// The infix operator if this is a core infix rule `X op TACTIC`.
    pub fn infix(&self) -> Option<crate::tactic::InfixOp> {
        match (&self.rhs[..], &self.lf) {
            ([Symbol::Cat(_), Symbol::Word(_), Symbol::Cat(Category::Tactic)], Lf::Prim(Prim::Infix(op))) => Some(*op),
            _ => None,
        }
    }

    pub fn check(&self) -> Result<(), GrammarError> {
        let bad = |m: String| Err(GrammarError::MalformedRule(format!("{self}: {m}")));
        if self.rhs.is_empty() {
            return bad("empty right-hand side".into());
        }
        if self.lhs == Category::Token {
            return bad("TOKEN cannot be a left-hand side".into());
        }
        if self.lhs == Category::Root && self.rhs != [Symbol::Cat(Category::Tactic)] {
            return bad("ROOT only derives TACTIC".into());
        }
        for s in &self.rhs {
            if let Symbol::Word(w) = s {
                if w.is_empty() || w.chars().any(char::is_whitespace) {
                    return bad(format!("bad terminal `{w}`"));
                }
            }
        }
        let cats: Vec<Category> = self.params().collect();
        if self.lf.arity() != cats.len() {
            return bad(format!("logical form takes {} arguments, rule has {}", self.lf.arity(), cats.len()));
        }
        if let Lf::Lam(ps, _) = &self.lf {
            if ps.iter().map(|p| p.1).ne(cats.iter().copied()) {
                return bad("parameter categories differ from the right-hand side".into());
            }
        }
        if let Lf::Prim(Prim::Lookup(ty)) = &self.lf {
            if Category::of_type(*ty) != Some(self.lhs) || cats != [Category::Token] {
                return bad("lookup type differs from the left-hand side".into());
            }
        }
        Ok(())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ->", self.lhs)?;
        for s in &self.rhs {
            write!(f, " {s}")?;
        }
        write!(f, " :: {} :: {}", self.lf, self.source)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrammarError {
    #[error("malformed rule {0}")]
    MalformedRule(String),
}

static NEXT_VERSION: AtomicU64 = AtomicU64::new(1);

/// Names resolvable by `lookup` constants, with their types.
pub type LookupMap = BTreeMap<Arc<str>, TacticType>;

/// An immutable grammar snapshot. Extension returns a new snapshot.
#[derive(Clone, Debug)]
pub struct Grammar {
    rules: Arc<Vec<Rule>>,
    lookups: Arc<LookupMap>,
    version: u64,
}

impl LookupTable for Grammar {
    fn lookup(&self, name: &str, ty: TacticType) -> bool {
        self.lookups.get(name) == Some(&ty)
    }
}

impl Grammar {
    pub fn new(rules: Vec<Rule>, lookups: LookupMap) -> Result<Grammar, GrammarError> {
        for r in &rules {
            r.check()?;
        }
        Ok(Grammar { rules: Arc::new(rules), lookups: Arc::new(lookups), version: NEXT_VERSION.fetch_add(1, Ordering::Relaxed) })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn lookups(&self) -> &LookupMap {
        &self.lookups
    }

    /// Snapshot identity; distinct snapshots have distinct versions.
    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn add_rule(&self, r: Rule) -> Result<Grammar, GrammarError> {
        self.add_rules(vec![r])
    }

    pub fn add_rules(&self, new: Vec<Rule>) -> Result<Grammar, GrammarError> {
        for r in &new {
            r.check()?;
        }
        let mut rules = (*self.rules).clone();
        rules.extend(new);
        Ok(Grammar { rules: Arc::new(rules), lookups: self.lookups.clone(), version: NEXT_VERSION.fetch_add(1, Ordering::Relaxed) })
    }

    /// One rule per line: `LHS -> rhs :: lf :: source`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in self.rules.iter() {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    /// Whether `word` alone is a terminal rule for `c`.
    pub fn has_terminal(&self, c: Category, word: &str) -> bool {
        self.rules.iter().any(|r| r.lhs == c && matches!(&r.rhs[..], [Symbol::Word(w)] if &**w == word))
    }

    /// Reduces a rule's logical form over child values, coercing bare
    /// tokens to theorem names where a theorem is expected.
    pub fn reduce(&self, r: &Rule, args: &[Sem]) -> Option<Sem> {
        let v = r.lf.apply(args, self)?;
        match (r.lhs, v) {
            (Category::Thm, Sem::Token(t)) => Some(Sem::Expr(TacticExpr::ThmRef(t))),
            (Category::Thms | Category::Quots, v @ Sem::List(_)) => Some(v),
            (_, Sem::List(_)) => None,
            (Category::Token, v) => Some(v),
            (c, Sem::Expr(e)) => {
                let want = c.value_type().or((c == Category::Root).then_some(TacticType::Tac))?;
                (e.type_of().ok()? == want).then_some(Sem::Expr(e))
            }
            (_, Sem::Token(_)) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn category_names_round_trip() {
        for c in Category::ALL {
            assert_eq!(Category::from_name(c.name()), Some(c));
        }
        assert_eq!(Category::ThmListTac.name(), "THMLIST_TAC");
    }

    #[test]
    fn malformed_rules_are_rejected() {
        let g = Grammar::new(vec![], LookupMap::new()).unwrap();
        let r = Rule::new(
            Category::Tactic,
            vec![Symbol::Word("simplify".into()), Symbol::Cat(Category::Thm)],
            Lf::Val(Sem::Token("x".into())),
            Source::Induced,
        );
        assert!(matches!(g.add_rule(r), Err(GrammarError::MalformedRule(_))));
        let r = Rule::new(Category::Tactic, vec![Symbol::Word("a b".into())], Lf::Val(Sem::Token("x".into())), Source::Core);
        assert!(g.add_rule(r).is_err());
    }

    #[test]
    fn snapshots_do_not_change() {
        let g = Grammar::new(vec![], LookupMap::new()).unwrap();
        let r = Rule::new(Category::Tactic, vec![Symbol::Word("go".into())], Lf::Val(Sem::Token("x".into())), Source::Core);
        let g2 = g.add_rule(r).unwrap();
        assert_eq!(g.rules().len(), 0);
        assert_eq!(g2.rules().len(), 1);
        assert_ne!(g.version(), g2.version());
    }
}
