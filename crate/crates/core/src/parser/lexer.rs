//! Tokenization of sentences.

use std::fmt;
use std::sync::Arc;

use crate::tactic::expr::normalize_quotation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TokenKind {
    Word,
    Punct,
    /// Delimited by apostrophes or backquotes; `text` is the interior.
    Quotation,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub kind: TokenKind,
    pub text: Arc<str>,
    /// Byte offsets of the token in the source, delimiters included.
    pub start: usize,
    pub end: usize,
}

impl Token {
    /// The interior of a quotation with whitespace runs collapsed.
    pub fn quotation(&self) -> Option<String> {
        (self.kind == TokenKind::Quotation).then(|| normalize_quotation(&self.text))
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::Quotation => write!(f, "'{}'", normalize_quotation(&self.text)),
            _ => f.write_str(&self.text),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unbalanced quotation starting at offset {0}")]
pub struct UnbalancedQuotation(pub usize);

pub const PUNCT: [char; 5] = ['[', ']', '(', ')', ','];

pub fn is_quote(c: char) -> bool {
    c == '\'' || c == '`'
}

/// Splits on whitespace; punctuation is always its own token; a quotation
/// runs to the next occurrence of its opening delimiter.
pub fn tokenize(s: &str) -> Result<Vec<Token>, UnbalancedQuotation> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if PUNCT.contains(&c) {
            chars.next();
            out.push(Token { kind: TokenKind::Punct, text: c.to_string().into(), start: i, end: i + c.len_utf8() });
        } else if is_quote(c) {
            chars.next();
            let close = s[i + 1..].find(c).ok_or(UnbalancedQuotation(i))? + i + 1;
            out.push(Token { kind: TokenKind::Quotation, text: s[i + 1..close].into(), start: i, end: close + 1 });
            while chars.peek().is_some_and(|&(j, _)| j <= close) {
                chars.next();
            }
        } else {
            let mut end = s.len();
            while let Some(&(j, d)) = chars.peek() {
                if d.is_whitespace() || PUNCT.contains(&d) || is_quote(d) {
                    end = j;
                    break;
                }
                chars.next();
            }
            out.push(Token { kind: TokenKind::Word, text: s[i..end].into(), start: i, end });
        }
    }
    Ok(out)
}

/// Tokens joined by single spaces, quotations re-delimited.
pub fn canonical(toks: &[Token]) -> String {
    toks.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<(TokenKind, String)> {
        tokenize(s).unwrap().into_iter().map(|t| (t.kind, t.text.to_string())).collect()
    }

    #[test]
    fn words_punct_and_quotations() {
        use TokenKind::*;
        assert_eq!(
            kinds("simplify with [LE_LT]"),
            vec![
                (Word, "simplify".into()),
                (Word, "with".into()),
                (Punct, "[".into()),
                (Word, "LE_LT".into()),
                (Punct, "]".into())
            ]
        );
        let q = kinds("we show 'n + 1 = SUC n'");
        assert_eq!(q.last().unwrap(), &(Quotation, "n + 1 = SUC n".to_string()));
        assert_eq!(kinds("` x <= y ` by (fs [])").len(), 7);
    }

    #[test]
    fn unbalanced_quotation() {
        assert_eq!(tokenize("'a"), Err(UnbalancedQuotation(0)));
        assert!(tokenize("").unwrap().is_empty());
    }

    #[test]
    fn canonical_form_is_stable() {
        let toks = tokenize("fs[A,B]  THEN  `x   = 1`").unwrap();
        let c = canonical(&toks);
        assert_eq!(c, "fs [ A , B ] THEN 'x = 1'");
        assert_eq!(canonical(&tokenize(&c).unwrap()), c);
    }
}
