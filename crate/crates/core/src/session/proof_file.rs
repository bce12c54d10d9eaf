//! Proof files: theorem blocks with naturalized proofs, interleaved with
//! definitions and custom declarations.
//!
//! ```text
//! custom tactic REAL_ASM_ARITH_TAC
//! def "simplify" = "fs [ ]"
//! theorem add_zero: "!n. n + 0 = n"
//! proof
//!   simplify.
//! qed
//! ```
//!
//! Strings run to the next double quote; there are no escapes. Lines
//! starting with `#` outside proofs are comments.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Item {
    Custom { kind: String, name: String },
    Def { utterance: String, definition: String },
    Theorem { name: String, goal: String, proof: String, line: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

/// A string literal at the start of `s`, and the rest of the line.
fn string(s: &str, line: usize) -> Result<(&str, &str), FormatError> {
    let err = |msg: &str| FormatError { line, msg: msg.into() };
    let s = s.trim_start();
    let body = s.strip_prefix('"').ok_or_else(|| err("expected a double-quoted string"))?;
    let end = body.find('"').ok_or_else(|| err("unterminated string"))?;
    Ok((&body[..end], &body[end + 1..]))
}

pub fn parse(text: &str) -> Result<Vec<Item>, FormatError> {
    let mut items = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    while let Some((n, raw)) = lines.next() {
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let err = |msg: String| FormatError { line: n, msg };
        if let Some(rest) = l.strip_prefix("custom ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            let [kind, name] = parts[..] else {
                return Err(err("expected `custom <kind> <name>`".into()));
            };
            items.push(Item::Custom { kind: kind.into(), name: name.into() });
        } else if let Some(rest) = l.strip_prefix("def ") {
            let (utterance, rest) = string(rest, n)?;
            let rest = rest.trim_start().strip_prefix('=').ok_or_else(|| err("expected `=`".into()))?;
            let (definition, rest) = string(rest, n)?;
            if !rest.trim().is_empty() {
                return Err(err(format!("unexpected `{}`", rest.trim())));
            }
            items.push(Item::Def { utterance: utterance.into(), definition: definition.into() });
        } else if let Some(rest) = l.strip_prefix("theorem ") {
            let (name, rest) = rest.split_once(':').ok_or_else(|| err("expected `theorem <name>: \"<formula>\"`".into()))?;
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(err(format!("bad theorem name `{name}`")));
            }
            let (goal, rest) = string(rest, n)?;
            if !rest.trim().is_empty() {
                return Err(err(format!("unexpected `{}`", rest.trim())));
            }
            match lines.next() {
                Some((_, p)) if p.trim() == "proof" => {}
                Some((m, _)) => return Err(FormatError { line: m, msg: "expected `proof`".into() }),
                None => return Err(err("missing `proof`".into())),
            }
            let mut body = Vec::new();
            loop {
                match lines.next() {
                    Some((_, p)) if p.trim() == "qed" => break,
                    Some((_, p)) => body.push(p),
                    None => return Err(err(format!("theorem {name} has no `qed`"))),
                }
            }
            items.push(Item::Theorem { name: name.into(), goal: goal.into(), proof: body.join("\n"), line: n });
        } else {
            return Err(err(format!("unexpected `{l}`")));
        }
    }
    Ok(items)
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Custom { kind, name } => writeln!(f, "custom {kind} {name}"),
            Item::Def { utterance, definition } => writeln!(f, "def \"{utterance}\" = \"{definition}\""),
            Item::Theorem { name, goal, proof, .. } => {
                writeln!(f, "theorem {name}: \"{goal}\"\nproof")?;
                for l in proof.lines() {
                    writeln!(f, "  {}", l.trim())?;
                }
                writeln!(f, "qed")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FILE: &str = r#"
# tutorial
custom tactic REAL_ASM_ARITH_TAC
def "simplify" = "fs [ ]"

theorem add_zero: "!n. n + 0 = n"
proof
  simplify.
qed
theorem t2: "p ==> p"
proof
  rpt strip_tac.
  simplify.
qed
"#;

    #[test]
    fn parses_blocks_in_order() {
        let items = parse(FILE).unwrap();
        assert_eq!(items.len(), 4);
        assert_eq!(items[0], Item::Custom { kind: "tactic".into(), name: "REAL_ASM_ARITH_TAC".into() });
        assert_eq!(items[1], Item::Def { utterance: "simplify".into(), definition: "fs [ ]".into() });
        match &items[3] {
            Item::Theorem { name, goal, proof, line } => {
                assert_eq!((name.as_str(), goal.as_str(), *line), ("t2", "p ==> p", 10));
                assert_eq!(proof.lines().count(), 2);
            }
            other => panic!("{other:?}"),
        }
        let again: String = items.iter().map(|i| i.to_string()).collect();
        let reparsed = parse(&again).unwrap();
        assert_eq!(reparsed.len(), 4);
        assert!(parse("").unwrap().is_empty());
    }

    #[test]
    fn reports_line_of_format_errors() {
        assert_eq!(parse("\n\ntheorem x \"p\"").unwrap_err().line, 3);
        assert_eq!(parse("theorem x: \"p\"\nproof\n  a.").unwrap_err().line, 1);
        assert_eq!(parse("def \"a\" \"b\"").unwrap_err().line, 1);
        assert_eq!(parse("custom tactic").unwrap_err().line, 1);
        assert_eq!(parse("frobnicate").unwrap_err().line, 1);
    }
}
