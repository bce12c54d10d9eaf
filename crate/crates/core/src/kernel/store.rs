//! Named lemmas that tactics may cite.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::syntax::{parse_term, TermError};
use super::term::Term;

const BUNDLED: &str = include_str!("store.txt");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct StoreError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Default)]
pub struct TheoremStore {
    lemmas: BTreeMap<Arc<str>, Term>,
}

impl TheoremStore {
    pub fn empty() -> TheoremStore {
        TheoremStore::default()
    }

    /// The lemma set shipped with the crate.
    pub fn bundled() -> TheoremStore {
        TheoremStore::parse(BUNDLED).expect("bundled lemma file is well formed")
    }

    /// Reads `NAME : formula` lines; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<TheoremStore, StoreError> {
        let mut store = TheoremStore::empty();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| StoreError { line: i + 1, msg };
            let (name, body) = line.split_once(" : ").ok_or_else(|| err("expected `NAME : formula`".into()))?;
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(err(format!("bad lemma name `{name}`")));
            }
            let t = parse_term(body).map_err(|e: TermError| err(e.to_string()))?;
            if store.lemmas.insert(name.into(), t).is_some() {
                return Err(err(format!("duplicate lemma `{name}`")));
            }
        }
        Ok(store)
    }

    pub fn get(&self, name: &str) -> Option<&Term> {
        self.lemmas.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lemmas.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.lemmas.keys().map(|k| &**k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.lemmas.iter().map(|(k, v)| (&**k, v))
    }

    pub fn len(&self) -> usize {
        self.lemmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lemmas.is_empty()
    }

    pub fn insert(&mut self, name: &str, t: Term) {
        self.lemmas.insert(name.into(), t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::semantics::holds_bounded;

    #[test]
    fn bundled_parses() {
        let s = TheoremStore::bundled();
        assert!(s.len() > 40);
        assert!(s.contains("CONJ_COMM"));
        assert!(s.contains("SUM_DEF"));
    }

    #[test]
    fn every_bundled_lemma_holds_on_small_values() {
        for (name, t) in TheoremStore::bundled().iter() {
            assert!(holds_bounded(t, 6), "{name} fails: {t}");
        }
    }

    #[test]
    fn parse_errors_carry_line() {
        let e = TheoremStore::parse("# c\nA : x = \n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(TheoremStore::parse("A x = x").is_err());
        assert!(TheoremStore::parse("A : x = x\nA : T").is_err());
    }
}
