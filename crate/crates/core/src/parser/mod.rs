//! Chart parsing under a grammar snapshot.
//!
//! Cells hold derivations keyed by (category, level, value). The level of
//! a TACTIC derivation is the precedence of its outermost infix, or
//! `ATOM_PRECEDENCE`; infix rules admit a left operand of at least their own
//! precedence and a right operand of strictly higher precedence, and other
//! rules admit only atomic TACTIC children unless the child is enclosed by
//! terminals on both sides.

pub mod lexer;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::grammar::{Category, Grammar, Rule, Sem, Symbol};
use crate::tactic::expr::{TacticExpr, ATOM_PRECEDENCE};

pub use lexer::{canonical, tokenize, Token, TokenKind, UnbalancedQuotation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    /// Index into the grammar's rules; `None` for token leaves.
    pub rule: Option<usize>,
    pub start: usize,
    pub end: usize,
    pub category: Category,
    pub level: u8,
    pub value: Sem,
    pub children: Vec<Arc<Derivation>>,
}

impl Derivation {
    pub fn expr(&self) -> Option<&TacticExpr> {
        self.value.expr()
    }

    /// This node and all descendants, pre-order.
    pub fn walk(&self) -> Vec<&Derivation> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.walk());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error(transparent)]
    Lex(#[from] UnbalancedQuotation),
    #[error("no parse: {0}")]
    NoParse(String),
    #[error("ambiguous: {}", .0.join(" | "))]
    Ambiguous(Vec<String>),
}

/// Safety bound on unary closure passes within one cell.
const MAX_UNARY_PASSES: usize = 64;

pub struct Chart<'g> {
    grammar: &'g Grammar,
    toks: Vec<Token>,
    /// `cells[i][len - 1]` covers tokens `i .. i + len`.
    cells: Vec<Vec<Vec<Arc<Derivation>>>>,
}

impl<'g> Chart<'g> {
    pub fn build(grammar: &'g Grammar, toks: &[Token]) -> Chart<'g> {
        let n = toks.len();
        let mut chart = Chart { grammar, toks: toks.to_vec(), cells: (0..n).map(|i| vec![Vec::new(); n - i]).collect() };
        for len in 1..=n {
            for i in 0..=n - len {
                chart.fill(i, i + len);
            }
        }
        chart
    }

    pub fn tokens(&self) -> &[Token] {
        &self.toks
    }

    /// Derivations covering `start .. end`.
    pub fn cell(&self, start: usize, end: usize) -> &[Arc<Derivation>] {
        if start >= end || end > self.toks.len() {
            return &[];
        }
        &self.cells[start][end - start - 1]
    }

    fn fill(&mut self, i: usize, j: usize) {
        let mut seen: HashSet<(Category, u8, Sem)> = HashSet::new();
        let mut items: Vec<Arc<Derivation>> = Vec::new();
        if j == i + 1 && self.toks[i].kind == TokenKind::Word {
            let leaf = Derivation {
                rule: None,
                start: i,
                end: j,
                category: Category::Token,
                level: ATOM_PRECEDENCE,
                value: Sem::Token(self.toks[i].text.clone()),
                children: vec![],
            };
            seen.insert((leaf.category, leaf.level, leaf.value.clone()));
            items.push(Arc::new(leaf));
        }
        let g = self.grammar;
        let rules = g.rules();
        for pass in 0..MAX_UNARY_PASSES {
            let mut added = false;
            for (ri, r) in rules.iter().enumerate() {
                let whole_span_unary = matches!(&r.rhs[..], [Symbol::Cat(_)]);
                if pass > 0 && !whole_span_unary {
                    continue;
                }
                let mut found = Vec::new();
                self.match_rule(r, 0, i, j, &items, &mut Vec::new(), &mut found);
                for children in found {
                    if let Some(d) = self.complete(ri, r, i, j, children) {
                        if seen.insert((d.category, d.level, d.value.clone())) {
                            items.push(Arc::new(d));
                            added |= whole_span_unary || pass == 0;
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }
        self.cells[i][j - i - 1] = items;
    }

    fn complete(&self, ri: usize, r: &Rule, i: usize, j: usize, children: Vec<Arc<Derivation>>) -> Option<Derivation> {
        let args: Vec<Sem> = children.iter().map(|c| c.value.clone()).collect();
        let value = self.grammar.reduce(r, &args)?;
        let level = match r.infix() {
            Some(op) => op.precedence(),
            None => ATOM_PRECEDENCE,
        };
        Some(Derivation { rule: Some(ri), start: i, end: j, category: r.lhs, level, value, children })
    }

    /// Whether a TACTIC child at rhs position `k` may have `level`.
    fn admits(r: &Rule, k: usize, level: u8) -> bool {
        if let Some(op) = r.infix() {
            let p = op.precedence();
            return if k == 0 { level >= p } else { level > p };
        }
        if r.lhs == Category::Root {
            return true;
        }
        let terminal = |idx: Option<usize>| idx.and_then(|x| r.rhs.get(x)).is_some_and(|s| !matches!(s, Symbol::Cat(_)));
        (terminal(k.checked_sub(1)) && terminal(Some(k + 1))) || level == ATOM_PRECEDENCE
    }

    #[allow(clippy::too_many_arguments)]
    fn match_rule(
        &self,
        r: &Rule,
        k: usize,
        pos: usize,
        j: usize,
        current: &[Arc<Derivation>],
        acc: &mut Vec<Arc<Derivation>>,
        out: &mut Vec<Vec<Arc<Derivation>>>,
    ) {
        if k == r.rhs.len() {
            if pos == j {
                out.push(acc.clone());
            }
            return;
        }
        let remaining = r.rhs.len() - k - 1;
        if pos + remaining >= j {
            return;
        }
        match &r.rhs[k] {
            Symbol::Word(w) => {
                let t = &self.toks[pos];
                if t.kind != TokenKind::Quotation && *t.text == **w {
                    self.match_rule(r, k + 1, pos + 1, j, current, acc, out);
                }
            }
            Symbol::Quoted(q) => {
                if self.toks[pos].quotation().as_deref() == Some(&**q) {
                    self.match_rule(r, k + 1, pos + 1, j, current, acc, out);
                }
            }
            Symbol::AnyQuotation => {
                if let Some(q) = self.toks[pos].quotation() {
                    acc.push(Arc::new(Derivation {
                        rule: None,
                        start: pos,
                        end: pos + 1,
                        category: Category::Token,
                        level: ATOM_PRECEDENCE,
                        value: Sem::Expr(TacticExpr::quot(&q)),
                        children: vec![],
                    }));
                    self.match_rule(r, k + 1, pos + 1, j, current, acc, out);
                    acc.pop();
                }
            }
            Symbol::Cat(c) => {
                let last = if remaining == 0 { j } else { j - remaining };
                let first = if remaining == 0 { j } else { pos + 1 };
                for q in first..=last {
                    // A child covering the whole span comes from the cell under construction.
                    let cell: &[Arc<Derivation>] = if k == 0 && q == j { current } else { self.cell(pos, q) };
                    for d in cell {
                        if d.category != *c {
                            continue;
                        }
                        if *c == Category::Tactic && !Self::admits(r, k, d.level) {
                            continue;
                        }
                        acc.push(d.clone());
                        self.match_rule(r, k + 1, q, j, current, acc, out);
                        acc.pop();
                    }
                }
            }
        }
    }

    /// Value-distinct derivations of the full input at `target`.
    pub fn parses(&self, target: Category) -> Vec<Arc<Derivation>> {
        let mut seen = HashSet::new();
        self.cell(0, self.toks.len())
            .iter()
            .filter(|d| d.category == target && seen.insert(d.value.clone()))
            .cloned()
            .collect()
    }
}

pub fn parse_all(g: &Grammar, toks: &[Token], target: Category) -> Vec<Arc<Derivation>> {
    Chart::build(g, toks).parses(target)
}

pub fn parse_unique(g: &Grammar, toks: &[Token], target: Category) -> Result<Arc<Derivation>, ParseError> {
    let chart = Chart::build(g, toks);
    let mut all = chart.parses(target);
    match all.len() {
        1 => Ok(all.pop().expect("one parse")),
        0 => Err(ParseError::NoParse(diagnose(&chart, target))),
        _ => Err(ParseError::Ambiguous(all.iter().map(|d| render_value(&d.value)).collect())),
    }
}

/// Tokenizes and parses a sentence.
pub fn parse_sentence(g: &Grammar, sentence: &str, target: Category) -> Result<Arc<Derivation>, ParseError> {
    parse_unique(g, &tokenize(sentence)?, target)
}

pub fn render_value(v: &Sem) -> String {
    match v {
        Sem::Expr(e) => e.render(),
        other => other.to_string(),
    }
}

fn diagnose(chart: &Chart, target: Category) -> String {
    let toks = chart.tokens();
    if toks.is_empty() {
        return "empty input".into();
    }
    let prefix = (1..toks.len()).rev().find(|&k| chart.cell(0, k).iter().any(|d| d.category == target));
    match prefix {
        Some(k) => format!(
            "`{}` parses, but not `{}` after it",
            canonical(&toks[..k]),
            canonical(&toks[k..])
        ),
        None => format!("no prefix of `{}` parses; first token `{}`", canonical(toks), toks[0]),
    }
}

/// A parseable sub-span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanValue {
    pub start: usize,
    pub end: usize,
    pub category: Category,
    pub value: Sem,
}

impl fmt::Display for SpanValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{} {} {}", self.start, self.end, self.category, render_value(&self.value))
    }
}

/// Spans parseable as an argument category that are not contained in a
/// larger span parseable as the same category, ordered by start offset and
/// then by decreasing length.
pub fn maximal_spans(g: &Grammar, toks: &[Token]) -> Vec<SpanValue> {
    let chart = Chart::build(g, toks);
    let n = toks.len();
    let mut out = Vec::new();
    for c in Category::ARGUMENTS {
        let has = |i: usize, j: usize| chart.cell(i, j).iter().any(|d| d.category == c);
        for i in 0..n {
            for j in i + 1..=n {
                if !has(i, j) {
                    continue;
                }
                let contained = (0..=i).any(|a| (j..=n).any(|b| (a, b) != (i, j) && has(a, b)));
                if contained {
                    continue;
                }
                let mut seen = HashSet::new();
                for d in chart.cell(i, j) {
                    if d.category == c && seen.insert(d.value.clone()) {
                        out.push(SpanValue { start: i, end: j, category: c, value: d.value.clone() });
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.start.cmp(&b.start).then(b.end.cmp(&a.end)).then(a.category.cmp(&b.category)));
    out
}

#[cfg(test)]
mod tests;
