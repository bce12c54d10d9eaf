//! Rule induction from (utterance, definition) pairs.
//!
//! A definition adds a literal rule for the exact utterance and, when spans
//! of the utterance parse to values that also occur in the definition's
//! derivation, a generalized rule abstracting those spans. Grammars are
//! immutable, so a failed definition leaves the caller's snapshot intact.

use std::collections::HashSet;

use crate::grammar::{Category, Grammar, GrammarError, Lf, Rule, Sem, Source, Symbol};
use crate::parser::{self, maximal_spans, parse_all, render_value, tokenize, ParseError, SpanValue, Token, TokenKind};
use crate::tactic::expr::TacticExpr;
use crate::tactic::registry::{DuplicateCustom, Registry};
use crate::tactic::{TacticType, TacticValue};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DefError {
    #[error("definition does not parse: {0}")]
    DefinitionUnparsable(String),
    #[error("definition is ambiguous: {}", .0.join(" | "))]
    DefinitionAmbiguous(Vec<String>),
    #[error("`{utterance}` already means `{existing}`")]
    AlreadyDefined { utterance: String, existing: String },
    #[error("`{0}` would become ambiguous")]
    WouldBeAmbiguous(String),
    #[error("empty utterance")]
    EmptyUtterance,
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

#[derive(Debug, Clone)]
pub struct DefResult {
    pub grammar: Grammar,
    /// The definition's value.
    pub value: TacticExpr,
    /// Rules appended to the grammar, literal first.
    pub rules: Vec<Rule>,
}

impl DefResult {
    pub fn rules_added(&self) -> usize {
        self.rules.len()
    }
}

/// Extends `g` so that `utterance` means `definition`.
pub fn def(g: &Grammar, utterance: &str, definition: &str, source: Source) -> Result<DefResult, DefError> {
    let dtoks = tokenize(definition).map_err(|e| DefError::DefinitionUnparsable(e.to_string()))?;
    let d = match parser::parse_unique(g, &dtoks, Category::Root) {
        Ok(d) => d,
        Err(ParseError::Ambiguous(vs)) => return Err(DefError::DefinitionAmbiguous(vs)),
        Err(e) => return Err(DefError::DefinitionUnparsable(e.to_string())),
    };
    let value = d.expr().expect("ROOT values are expressions").clone();
    let utoks = tokenize(utterance).map_err(|e| DefError::WouldBeAmbiguous(e.to_string()))?;
    if utoks.is_empty() {
        return Err(DefError::EmptyUtterance);
    }
    let canonical = parser::canonical(&utoks);
    let existing = parse_all(g, &utoks, Category::Root);
    if existing.iter().any(|e| e.expr() == Some(&value)) && existing.len() == 1 {
        return Ok(DefResult { grammar: g.clone(), value, rules: vec![] });
    }
    if let Some(e) = existing.first() {
        return Err(DefError::AlreadyDefined { utterance: canonical, existing: render_value(&e.value) });
    }

    let occurrences: HashSet<(Category, Sem)> = d
        .walk()
        .into_iter()
        .filter(|x| x.category != Category::Root && Category::ARGUMENTS.contains(&x.category))
        .map(|x| (x.category, x.value.clone()))
        .collect();
    let spans = choose_spans(maximal_spans(g, &utoks), &occurrences, utoks.len());

    let mut rules = vec![literal_rule(&utoks, &value, source.clone())];
    if !spans.is_empty() {
        rules.push(generalized_rule(&utoks, &spans, &value, source));
    }
    let grammar = g.add_rules(rules.clone())?;
    check_unambiguous(&grammar, &utoks, &spans, &value)?;
    Ok(DefResult { grammar, value, rules })
}

/// Non-overlapping spans whose (category, value) occurs in the definition:
/// longest first, then leftmost; each value abstracted at most once.
fn choose_spans(candidates: Vec<SpanValue>, occurrences: &HashSet<(Category, Sem)>, n: usize) -> Vec<SpanValue> {
    let mut cands: Vec<SpanValue> = candidates
        .into_iter()
        .filter(|s| s.end - s.start < n && occurrences.contains(&(s.category, s.value.clone())))
        .collect();
    cands.sort_by(|a, b| (b.end - b.start).cmp(&(a.end - a.start)).then(a.start.cmp(&b.start)));
    let mut chosen: Vec<SpanValue> = Vec::new();
    for s in cands {
        let overlaps = chosen.iter().any(|c| s.start < c.end && c.start < s.end);
        let repeated = chosen.iter().any(|c| c.value == s.value);
        if !overlaps && !repeated {
            chosen.push(s);
        }
    }
    chosen.sort_by_key(|s| s.start);
    chosen
}

fn terminal(t: &Token) -> Symbol {
    match t.quotation() {
        Some(q) => Symbol::Quoted(q.into()),
        None => Symbol::Word(t.text.clone()),
    }
}

fn literal_rule(toks: &[Token], value: &TacticExpr, source: Source) -> Rule {
    Rule::new(Category::Tactic, toks.iter().map(terminal).collect(), Lf::Val(Sem::Expr(value.clone())), source)
}

fn generalized_rule(toks: &[Token], spans: &[SpanValue], value: &TacticExpr, source: Source) -> Rule {
    let mut rhs = Vec::new();
    let mut i = 0;
    for s in spans {
        rhs.extend(toks[i..s.start].iter().map(terminal));
        rhs.push(Symbol::Cat(s.category));
        i = s.end;
    }
    rhs.extend(toks[i..].iter().map(terminal));
    let cats: Vec<Category> = spans.iter().map(|s| s.category).collect();
    let holes: Vec<TacticExpr> = spans.iter().map(|s| s.value.expr().expect("argument values are expressions").clone()).collect();
    Rule::new(Category::Tactic, rhs, Lf::lam(&cats, Lf::abstract_expr(value, &holes)), source)
}

/// Placeholder text for an argument of category `c`.
fn fresh_filler(g: &Grammar, c: Category) -> Option<String> {
    let word = (0..)
        .map(|k| format!("FRESH_{k}"))
        .find(|w| !g.lookups().contains_key(w.as_str()) && g.rules().iter().all(|r| !r.rhs.contains(&Symbol::Word(w.as_str().into()))))
        .expect("unbounded");
    Some(match c {
        Category::Thm => word,
        Category::ThmList => format!("[ {word} ]"),
        Category::Quot => "'fresh'".into(),
        Category::QuotList => "[ 'fresh' ]".into(),
        Category::Tactic => "all_tac".into(),
        _ => return None,
    })
}

/// The utterance, and variants with each abstracted argument replaced by
/// a fresh filler, must each parse to exactly one value. Where a TACTIC
/// argument is not enclosed by terminals, a self-nested variant must be
/// unique too, which rejects rules whose repetition has no grouping.
fn check_unambiguous(g: &Grammar, toks: &[Token], spans: &[SpanValue], value: &TacticExpr) -> Result<(), DefError> {
    let text = |ts: &[Token]| parser::canonical(ts);
    let unique = |s: &str| -> bool { tokenize(s).map(|ts| parse_all(g, &ts, Category::Root).len() == 1).unwrap_or(false) };
    let all = parse_all(g, toks, Category::Root);
    if all.len() != 1 || all[0].expr() != Some(value) {
        return Err(DefError::WouldBeAmbiguous(text(toks)));
    }
    let with = |k: usize, fill: &str| -> String {
        let s = &spans[k];
        let mut parts = vec![text(&toks[..s.start]), fill.to_string(), text(&toks[s.end..])];
        parts.retain(|p| !p.is_empty());
        parts.join(" ")
    };
    for (k, s) in spans.iter().enumerate() {
        let Some(fill) = fresh_filler(g, s.category) else { continue };
        let variant = with(k, &fill);
        if !unique(&variant) {
            return Err(DefError::WouldBeAmbiguous(variant));
        }
        let in_span = |i: usize| spans.iter().any(|t| t.start <= i && i < t.end);
        let enclosed = s.start > 0 && s.end < toks.len() && !in_span(s.start - 1) && !in_span(s.end);
        if s.category == Category::Tactic && !enclosed {
            let base = {
                let mut out = Vec::new();
                let mut i = 0;
                for t in spans {
                    out.push(text(&toks[i..t.start]));
                    out.push(fresh_filler(g, t.category).unwrap_or_else(|| text(&toks[t.start..t.end])));
                    i = t.end;
                }
                out.push(text(&toks[i..]));
                out.retain(|p| !p.is_empty());
                out.join(" ")
            };
            let nested = with(k, &base);
            if !unique(&nested) {
                return Err(DefError::WouldBeAmbiguous(nested));
            }
        }
    }
    Ok(())
}

/// Custom kinds accepted by declarations.
pub fn custom_kind(name: &str) -> Option<TacticType> {
    match name {
        "tactic" => Some(TacticType::Tac),
        "thm_tactic" => Some(TacticType::ThmTac),
        "thmlist_tactic" => Some(TacticType::ThmListTac),
        _ => None,
    }
}

pub fn custom_kind_name(ty: TacticType) -> Option<&'static str> {
    match ty {
        TacticType::Tac => Some("tactic"),
        TacticType::ThmTac => Some("thm_tactic"),
        TacticType::ThmListTac => Some("thmlist_tactic"),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CustomError {
    #[error(transparent)]
    Duplicate(#[from] DuplicateCustom),
    #[error("`{0}` is not a single word")]
    InvalidName(String),
    #[error("custom tactics have kind tactic, thm_tactic or thmlist_tactic")]
    InvalidKind,
}

/// Registers a custom tactic and a terminal rule naming it.
pub fn add_custom(
    g: &Grammar,
    reg: &Registry,
    name: &str,
    ty: TacticType,
    imp: Option<TacticValue>,
) -> Result<(Grammar, Registry), CustomError> {
    let lhs = Category::of_type(ty).filter(|_| custom_kind_name(ty).is_some()).ok_or(CustomError::InvalidKind)?;
    let word_ok = tokenize(name).is_ok_and(|ts| ts.len() == 1 && ts[0].kind == TokenKind::Word);
    if !word_ok {
        return Err(CustomError::InvalidName(name.into()));
    }
    let reg = reg.with_custom(name, ty, imp)?;
    let rule = Rule::new(lhs, vec![Symbol::Word(name.into())], Lf::Val(Sem::Expr(TacticExpr::Lookup(name.into(), ty))), Source::Custom);
    let g = g.add_rule(rule).expect("custom terminal rules are well formed");
    Ok((g, reg))
}

#[cfg(test)]
mod tests;
