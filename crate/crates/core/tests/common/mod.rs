//! Generators and oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use tactica::grammar::{Category, Grammar, Lf, LookupMap, Prim, Rule, Sem, Source, Symbol};
use tactica::tactic::expr::{InfixOp, TacticExpr, ATOM_PRECEDENCE};
use tactica::tactic::TacticType;

/// Whether a TACTIC child at rhs position `k` may have `level`, restated
/// independently of the parser.
pub fn admits(r: &Rule, k: usize, level: u8) -> bool {
    if let (Lf::Prim(Prim::Infix(op)), 3) = (&r.lf, r.rhs.len()) {
        let p = op.precedence();
        return if k == 0 { level >= p } else { level > p };
    }
    if r.lhs == Category::Root {
        return true;
    }
    let is_terminal = |i: isize| i >= 0 && (i as usize) < r.rhs.len() && !matches!(r.rhs[i as usize], Symbol::Cat(_));
    level == ATOM_PRECEDENCE || (is_terminal(k as isize - 1) && is_terminal(k as isize + 1))
}

fn level_of(r: &Rule) -> u8 {
    match (&r.lf, r.rhs.len()) {
        (Lf::Prim(Prim::Infix(op)), 3) => op.precedence(),
        _ => ATOM_PRECEDENCE,
    }
}

// ---------------------------------------------------------------------------
// Random derivations

pub struct Sampler<'a> {
    pub g: &'a Grammar,
    pub theorems: Vec<String>,
    pub quotations: Vec<String>,
    pub max_depth: usize,
    by_type: BTreeMap<TacticType, Vec<String>>,
    height: HashMap<Category, usize>,
}

/// A sampled utterance with its intended value.
#[derive(Clone, Debug)]
pub struct Sample {
    pub tokens: Vec<String>,
    pub value: Sem,
    pub level: u8,
}

impl Sample {
    pub fn text(&self) -> String {
        self.tokens.join(" ")
    }
}

impl<'a> Sampler<'a> {
    pub fn new(g: &'a Grammar, theorems: Vec<String>, quotations: Vec<String>, max_depth: usize) -> Sampler<'a> {
        let mut by_type: BTreeMap<TacticType, Vec<String>> = BTreeMap::new();
        for (n, ty) in g.lookups() {
            by_type.entry(*ty).or_default().push(n.to_string());
        }
        let mut s = Sampler { g, theorems, quotations, max_depth, by_type, height: HashMap::new() };
        s.height = s.heights();
        s
    }

    fn usable(&self, r: &Rule) -> bool {
        match &r.lf {
            Lf::Prim(Prim::Lookup(ty)) => self.by_type.contains_key(ty),
            _ => r.params().all(|c| c == Category::Token || c == Category::Quot || self.height.contains_key(&c) || self.height.is_empty()),
        }
    }

    /// Minimum derivation height per category.
    fn heights(&self) -> HashMap<Category, usize> {
        let mut h: HashMap<Category, usize> = HashMap::new();
        loop {
            let mut changed = false;
            for r in self.g.rules() {
                if let Lf::Prim(Prim::Lookup(ty)) = &r.lf {
                    if !self.by_type.contains_key(ty) {
                        continue;
                    }
                }
                let mut m = 0;
                let mut ok = true;
                for s in &r.rhs {
                    if let Symbol::Cat(c) = s {
                        if *c == Category::Token {
                            continue;
                        }
                        match h.get(c) {
                            Some(x) => m = m.max(*x),
                            None => ok = false,
                        }
                    }
                }
                if ok && h.get(&r.lhs).is_none_or(|x| *x > m + 1) {
                    h.insert(r.lhs, m + 1);
                    changed = true;
                }
            }
            if !changed {
                return h;
            }
        }
    }

    fn rule_height(&self, r: &Rule) -> usize {
        1 + r
            .rhs
            .iter()
            .filter_map(|s| match s {
                Symbol::Cat(Category::Token) => None,
                Symbol::Cat(c) => Some(self.height.get(c).copied().unwrap_or(usize::MAX / 2)),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn sample(&self, rng: &mut impl Rng, c: Category) -> Option<Sample> {
        (0..50).find_map(|_| self.gen(rng, c, 0))
    }

    fn gen(&self, rng: &mut impl Rng, c: Category, depth: usize) -> Option<Sample> {
        let mut rules: Vec<(usize, &Rule)> =
            self.g.rules().iter().enumerate().filter(|(_, r)| r.lhs == c && self.usable(r)).collect();
        if depth >= self.max_depth {
            let best = rules.iter().map(|(_, r)| self.rule_height(r)).min()?;
            rules.retain(|(_, r)| self.rule_height(r) == best);
        }
        let (_, r) = *rules.choose(rng)?;
        let mut tokens = Vec::new();
        let mut args = Vec::new();
        for (k, s) in r.rhs.iter().enumerate() {
            match s {
                Symbol::Word(w) => tokens.push(w.to_string()),
                Symbol::Quoted(q) => tokens.push(format!("'{q}'")),
                Symbol::AnyQuotation => {
                    let q = self.quotations.choose(rng)?;
                    tokens.push(format!("'{q}'"));
                    args.push(Sem::Expr(TacticExpr::quot(q)));
                }
                Symbol::Cat(Category::Token) => {
                    let word = match &r.lf {
                        Lf::Prim(Prim::Lookup(ty)) => self.by_type.get(ty)?.choose(rng)?.clone(),
                        _ if r.lhs == Category::Thm => self.theorems.choose(rng)?.clone(),
                        _ => rng.gen_range(1..=3).to_string(),
                    };
                    tokens.push(word.clone());
                    args.push(Sem::Token(word.into()));
                }
                Symbol::Cat(child) => {
                    let mut sub = self.gen(rng, *child, depth + 1)?;
                    if *child == Category::Tactic && !admits(r, k, sub.level) {
                        sub.tokens.insert(0, "(".into());
                        sub.tokens.push(")".into());
                    }
                    tokens.extend(sub.tokens);
                    args.push(sub.value);
                }
            }
        }
        let value = self.g.reduce(r, &args)?;
        Some(Sample { tokens, value, level: level_of(r) })
    }
}

// ---------------------------------------------------------------------------
// Brute-force derivation enumeration

type Item = (Vec<Arc<str>>, u8, Sem);

/// Every derivation of at most `max_len` tokens, grouped by yield: the set
/// of ROOT values per token string. `vocab` lists the word tokens TOKEN
/// may match.
pub fn enumerate(g: &Grammar, vocab: &[&str], max_len: usize) -> HashMap<Vec<Arc<str>>, HashSet<Sem>> {
    let mut items: HashMap<(Category, usize), Vec<Item>> = HashMap::new();
    let mut seen: HashSet<(Category, Vec<Arc<str>>, u8, Sem)> = HashSet::new();
    for len in 1..=max_len {
        loop {
            let mut added = Vec::new();
            for r in g.rules() {
                let mut out = Vec::new();
                expand(r, 0, len, &items, vocab, &mut Vec::new(), &mut Vec::new(), &mut out);
                for (toks, args) in out {
                    let Some(v) = g.reduce(r, &args) else { continue };
                    let key = (r.lhs, toks.clone(), level_of(r), v.clone());
                    if seen.insert(key) {
                        added.push((r.lhs, (toks, level_of(r), v)));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            for (c, it) in added {
                items.entry((c, len)).or_default().push(it);
            }
        }
    }
    let mut out: HashMap<Vec<Arc<str>>, HashSet<Sem>> = HashMap::new();
    for len in 1..=max_len {
        for (toks, _, v) in items.get(&(Category::Root, len)).into_iter().flatten() {
            out.entry(toks.clone()).or_default().insert(v.clone());
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn expand(
    r: &Rule,
    k: usize,
    left: usize,
    items: &HashMap<(Category, usize), Vec<Item>>,
    vocab: &[&str],
    toks: &mut Vec<Arc<str>>,
    args: &mut Vec<Sem>,
    out: &mut Vec<(Vec<Arc<str>>, Vec<Sem>)>,
) {
    if k == r.rhs.len() {
        if left == 0 {
            out.push((toks.clone(), args.clone()));
        }
        return;
    }
    let rest = r.rhs.len() - k - 1;
    if left < 1 + rest {
        return;
    }
    match &r.rhs[k] {
        Symbol::Word(w) => {
            toks.push(w.clone());
            expand(r, k + 1, left - 1, items, vocab, toks, args, out);
            toks.pop();
        }
        Symbol::Quoted(_) | Symbol::AnyQuotation => {}
        Symbol::Cat(Category::Token) => {
            for w in vocab {
                toks.push((*w).into());
                args.push(Sem::Token((*w).into()));
                expand(r, k + 1, left - 1, items, vocab, toks, args, out);
                args.pop();
                toks.pop();
            }
        }
        Symbol::Cat(c) => {
            for l in 1..=left - rest {
                for (t, level, v) in items.get(&(*c, l)).into_iter().flatten() {
                    if *c == Category::Tactic && !admits(r, k, *level) {
                        continue;
                    }
                    let n = toks.len();
                    toks.extend(t.iter().cloned());
                    args.push(v.clone());
                    expand(r, k + 1, left - l, items, vocab, toks, args, out);
                    args.pop();
                    toks.truncate(n);
                }
            }
        }
    }
}

/// A 15-rule grammar over the words `t`, `f`, `THEN` and brackets, with
/// brackets doubling as grouping, juxtaposed list items, and induced rules
/// that overlap the core ones.
pub fn oracle_grammar() -> Grammar {
    use Category as C;
    let cat = Symbol::Cat;
    let w = |s: &str| Symbol::Word(s.into());
    let core = |lhs, rhs, lf| Rule::new(lhs, rhs, lf, Source::Core);
    let induced = |lhs, rhs, lf| Rule::new(lhs, rhs, lf, Source::Induced);
    let v = |n: u32| Lf::Var(n);
    let fs = TacticExpr::Lookup("f".into(), TacticType::ThmListTac);
    let rules = vec![
        core(C::Root, vec![cat(C::Tactic)], Lf::identity(C::Tactic)),
        core(C::Tactic, vec![cat(C::Token)], Lf::Prim(Prim::Lookup(TacticType::Tac))),
        core(C::ThmListTac, vec![cat(C::Token)], Lf::Prim(Prim::Lookup(TacticType::ThmListTac))),
        core(C::Tactic, vec![cat(C::ThmListTac), cat(C::ThmList)], Lf::lam(&[C::ThmListTac, C::ThmList], Lf::app(v(1), vec![v(2)]))),
        core(C::Thm, vec![cat(C::Token)], Lf::identity(C::Token)),
        core(C::ThmList, vec![w("["), w("]")], Lf::Val(Sem::Expr(TacticExpr::ThmList(vec![])))),
        core(C::ThmList, vec![w("["), cat(C::Thms), w("]")], Lf::lam(&[C::Thms], Lf::app(Lf::Prim(Prim::ThmList), vec![v(1)]))),
        core(C::Thms, vec![cat(C::Thm)], Lf::lam(&[C::Thm], Lf::app(Lf::Prim(Prim::Single), vec![v(1)]))),
        core(C::Thms, vec![cat(C::Thm), cat(C::Thms)], Lf::lam(&[C::Thm, C::Thms], Lf::app(Lf::Prim(Prim::Cons), vec![v(1), v(2)]))),
        core(C::Tactic, vec![w("["), cat(C::Tactic), w("]")], Lf::identity(C::Tactic)),
        core(C::Tactic, vec![cat(C::Tactic), w("THEN"), cat(C::Tactic)], Lf::Prim(Prim::Infix(InfixOp::Then))),
        induced(
            C::Tactic,
            vec![w("t"), cat(C::Thm)],
            Lf::lam(&[C::Thm], Lf::app(Lf::Val(Sem::Expr(fs.clone())), vec![Lf::app(Lf::Prim(Prim::ThmList), vec![v(1)])])),
        ),
        induced(C::Tactic, vec![cat(C::ThmList), w("THEN")], Lf::lam(&[C::ThmList], Lf::app(Lf::Val(Sem::Expr(fs)), vec![v(1)]))),
        induced(C::Tactic, vec![w("f"), w("f")], Lf::Val(Sem::Expr(TacticExpr::Lookup("t".into(), TacticType::Tac)))),
        induced(
            C::Tactic,
            vec![cat(C::Tactic), w("THEN"), w("THEN"), cat(C::Tactic)],
            Lf::lam(&[C::Tactic, C::Tactic], Lf::app(Lf::Prim(Prim::Infix(InfixOp::Orelse)), vec![v(1), v(2)])),
        ),
    ];
    assert_eq!(rules.len(), 15);
    let lookups: LookupMap = [("t".into(), TacticType::Tac), ("f".into(), TacticType::ThmListTac)].into_iter().collect();
    Grammar::new(rules, lookups).expect("well formed")
}

pub const ORACLE_ALPHABET: [&str; 5] = ["t", "f", "THEN", "[", "]"];
pub const ORACLE_WORDS: [&str; 3] = ["t", "f", "THEN"];

/// All strings over `alphabet` of length 1 ..= `max_len`.
pub fn all_strings(alphabet: &[&str], max_len: usize) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<String>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|p| alphabet.iter().map(move |a| p.iter().cloned().chain([a.to_string()]).collect::<Vec<_>>()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

// ---------------------------------------------------------------------------
// Goals and vocabularies

pub const THEOREMS: [&str; 12] = [
    "ADD_0", "ADD_COMM", "ADD_ASSOC", "ADD_CLAUSES", "MULT_CLAUSES", "LESS_TRANS", "LE_LT", "LESS_0", "SUM_DEF", "CONJ_COMM",
    "LEFT_ADD_DISTRIB", "NOT_LESS_0",
];

pub const QUOTATIONS: [&str; 12] =
    ["n", "m", "p", "q", "n = 0", "p /\\ q", "SUC n", "0", "n < m", "m + n = n + m", "T", "~p"];

/// A random small proposition over `p`, `q` (bool) and `n`, `m` (nat).
pub fn random_goal(rng: &mut impl Rng, depth: usize) -> String {
    fn nat(rng: &mut impl Rng, d: usize) -> String {
        if d == 0 {
            return ["n", "m", "0", "1", "2"].choose(rng).unwrap().to_string();
        }
        match rng.gen_range(0..6) {
            0 => format!("({} + {})", nat(rng, d - 1), nat(rng, d - 1)),
            1 => format!("({} * {})", nat(rng, d - 1), nat(rng, d - 1)),
            2 => format!("SUC {}", nat(rng, d - 1)),
            3 => format!("sum {}", nat(rng, d - 1)),
            _ => nat(rng, 0),
        }
    }
    fn prop(rng: &mut impl Rng, d: usize) -> String {
        if d == 0 {
            return match rng.gen_range(0..6) {
                0 => "p".into(),
                1 => "q".into(),
                2 => "T".into(),
                3 => format!("{} = {}", nat(rng, 1), nat(rng, 1)),
                4 => format!("{} < {}", nat(rng, 1), nat(rng, 1)),
                _ => format!("{} <= {}", nat(rng, 1), nat(rng, 1)),
            };
        }
        match rng.gen_range(0..8) {
            0 => format!("({} /\\ {})", prop(rng, d - 1), prop(rng, d - 1)),
            1 => format!("({} \\/ {})", prop(rng, d - 1), prop(rng, d - 1)),
            2 => format!("({} ==> {})", prop(rng, d - 1), prop(rng, d - 1)),
            3 => format!("~({})", prop(rng, d - 1)),
            4 => format!("({} <=> {})", prop(rng, d - 1), prop(rng, d - 1)),
            5 => format!("(!n. {})", prop(rng, d - 1)),
            6 => format!("(?m. {})", prop(rng, d - 1)),
            _ => prop(rng, 0),
        }
    }
    prop(rng, depth)
}

/// Ten definitions whose induced rules (two each) extend the core grammar.
pub const INDUCED_DEFS: [(&str, &str); 10] = [
    ("simplify with ADD_ASSOC", "fs [ADD_ASSOC]"),
    ("simplify using [LE_LT]", "fs [LE_LT]"),
    ("rewrite with [SUM_DEF]", "rw [SUM_DEF]"),
    ("induction on 'n'", "Induct_on `n`"),
    ("case analysis on 'n'", "Cases_on `n`"),
    ("use LESS_TRANS", "irule LESS_TRANS"),
    ("follows from [ADD_COMM]", "metis_tac [ADD_COMM]"),
    ("we show 'p' using (fs [])", "'p' by (fs [])"),
    ("try ( DECIDE_TAC ) or else ( fs [] )", "DECIDE_TAC ORELSE fs []"),
    ("take 'x' then ( DECIDE_TAC )", "qexists_tac `x` THEN DECIDE_TAC"),
];
