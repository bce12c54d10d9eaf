//! Named tactic-language values and their types.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::kernel::TheoremStore;

use super::builtins::{builtins, custom_catalog};
use super::types::TacticType;
use super::value::TacticValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    Builtin,
    Custom,
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub ty: TacticType,
    /// `None` for declarations that parse and render but cannot run.
    pub imp: Option<TacticValue>,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is already registered")]
pub struct DuplicateCustom(pub String);

/// Immutable map from names to entries; extension returns a new registry.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    entries: Arc<BTreeMap<Arc<str>, Entry>>,
}

/// Kinds a custom declaration may have.
pub const CUSTOM_KINDS: [TacticType; 3] = [TacticType::Tac, TacticType::ThmTac, TacticType::ThmListTac];

impl Registry {
    pub fn builtin(store: &TheoremStore) -> Registry {
        let mut entries = BTreeMap::new();
        for (name, v) in builtins(store) {
            let prev = entries.insert(Arc::from(name), Entry { ty: v.type_of(), imp: Some(v), origin: Origin::Builtin });
            debug_assert!(prev.is_none(), "duplicate builtin {name}");
        }
        Registry { entries: Arc::new(entries) }
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.get(name)
    }

    pub fn type_of(&self, name: &str) -> Option<TacticType> {
        self.get(name).map(|e| e.ty)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Entry)> {
        self.entries.iter().map(|(k, v)| (&**k, v))
    }

    /// Names registered with type `ty`, in order.
    pub fn names_of(&self, ty: TacticType) -> impl Iterator<Item = &str> {
        self.iter().filter(move |(_, e)| e.ty == ty).map(|(n, _)| n)
    }

    /// Adds a custom declaration. Without an explicit implementation, known
    /// names get one from the custom catalog and others stay opaque.
    pub fn with_custom(&self, name: &str, ty: TacticType, imp: Option<TacticValue>) -> Result<Registry, DuplicateCustom> {
        if self.entries.contains_key(name) {
            return Err(DuplicateCustom(name.to_string()));
        }
        let imp = imp.or_else(|| custom_catalog(name).filter(|v| v.type_of() == ty));
        let mut entries = (*self.entries).clone();
        entries.insert(Arc::from(name), Entry { ty, imp, origin: Origin::Custom });
        Ok(Registry { entries: Arc::new(entries) })
    }
}
