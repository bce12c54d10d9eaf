//! Sentence splitting and navigation directives.

use crate::parser::lexer::is_quote;
use crate::parser::{tokenize, Token, TokenKind, UnbalancedQuotation};

/// Splits on `.` at top level: outside quotations and bracket or paren
/// groups, and only where the period ends a word (followed by whitespace
/// or the end of input), so qualified names like `intLib.ARITH_TAC` stay
/// whole. Sentences are trimmed; empty ones are dropped.
pub fn split_sentences(script: &str) -> Result<Vec<String>, UnbalancedQuotation> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut quote: Option<(char, usize)> = None;
    let mut start = 0;
    let mut chars = script.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if let Some((q, _)) = quote {
            if c == q {
                quote = None;
            }
            continue;
        }
        match c {
            c if is_quote(c) => quote = Some((c, i)),
            '(' | '[' => depth += 1,
            ')' | ']' => depth = depth.saturating_sub(1),
            '.' if depth == 0 && chars.peek().is_none_or(|(_, n)| n.is_whitespace()) => {
                out.push(script[start..i].trim().to_string());
                start = i + 1;
            }
            _ => {}
        }
    }
    if let Some((_, at)) = quote {
        return Err(UnbalancedQuotation(at));
    }
    out.push(script[start..].trim().to_string());
    out.retain(|s| !s.is_empty());
    Ok(out)
}

/// Focus commands handled by the session rather than the grammar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    NextGoal,
    /// Focus the first open goal whose conclusion matches the quotation.
    Goal(String),
    End,
}

impl Directive {
    pub fn parse(sentence: &str) -> Option<Directive> {
        let toks: Vec<Token> = tokenize(sentence).ok()?;
        let words: Vec<&str> = toks.iter().map(|t| &*t.text).collect();
        match (words.as_slice(), toks.as_slice()) {
            (["Next", "Goal"], [a, b]) if a.kind == TokenKind::Word && b.kind == TokenKind::Word => Some(Directive::NextGoal),
            (["End"], [a]) if a.kind == TokenKind::Word => Some(Directive::End),
            (["Goal", _], [a, q]) if a.kind == TokenKind::Word => q.quotation().map(Directive::Goal),
            _ => None,
        }
    }
}
