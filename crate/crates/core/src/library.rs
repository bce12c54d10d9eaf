//! Libraries: portable, declarative tactic languages.
//!
//! A library lists custom declarations and (utterance, definition) pairs.
//! Loading replays customs and then entries onto a session's grammar in
//! order; conflicting entries are skipped and reported, so a skipped entry
//! never changes the grammar.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::grammar::{Category, Source};
use crate::kernel::TheoremStore;
use crate::session::{Session, SessionError};
use crate::tactic::TacticType;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CustomKind {
    Tactic,
    ThmTactic,
    ThmlistTactic,
}

impl CustomKind {
    pub fn of_type(ty: TacticType) -> Option<CustomKind> {
        match ty {
            TacticType::Tac => Some(CustomKind::Tactic),
            TacticType::ThmTac => Some(CustomKind::ThmTactic),
            TacticType::ThmListTac => Some(CustomKind::ThmlistTactic),
            _ => None,
        }
    }

    pub fn tactic_type(self) -> TacticType {
        match self {
            CustomKind::Tactic => TacticType::Tac,
            CustomKind::ThmTactic => TacticType::ThmTac,
            CustomKind::ThmlistTactic => TacticType::ThmListTac,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CustomKind::Tactic => "tactic",
            CustomKind::ThmTactic => "thm_tactic",
            CustomKind::ThmlistTactic => "thmlist_tactic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomDecl {
    pub name: String,
    pub kind: CustomKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub utterance: String,
    pub definition: String,
}

impl Entry {
    pub fn new(utterance: &str, definition: &str) -> Entry {
        Entry { utterance: utterance.into(), definition: definition.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Library {
    pub name: String,
    pub version: u32,
    pub customs: Vec<CustomDecl>,
    pub entries: Vec<Entry>,
}

#[derive(Debug, thiserror::Error)]
pub enum LibraryError {
    #[error("library `{0}` is already registered")]
    DuplicateLibrary(String),
    #[error("entry {index} does not replay: {error}")]
    ReplayFailure { index: usize, error: SessionError },
    #[error("custom `{name}` cannot be declared: {error}")]
    CustomFailure { name: String, error: SessionError },
    #[error("library file not found: {0}")]
    FileNotFound(String),
    #[error("malformed library: {0}")]
    FormatError(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl LibraryError {
    /// Stable snake_case identifier for wire formats.
    pub fn kind(&self) -> &'static str {
        match self {
            LibraryError::DuplicateLibrary(_) => "duplicate_library",
            LibraryError::ReplayFailure { .. } => "replay_failure",
            LibraryError::CustomFailure { .. } => "custom_failure",
            LibraryError::FileNotFound(_) => "file_not_found",
            LibraryError::FormatError(_) => "format_error",
            LibraryError::Io(_) => "io_error",
        }
    }
}

/// Why an entry or declaration was not applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub library: String,
    /// Entry index, or `None` for a custom declaration.
    pub index: Option<usize>,
    pub item: String,
    pub reason: String,
    pub kind: &'static str,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LoadReport {
    pub loaded: Vec<String>,
    pub rules_added: usize,
    pub skipped: Vec<Skipped>,
}

impl Library {
    pub fn new(name: &str, customs: Vec<CustomDecl>, entries: Vec<Entry>) -> Library {
        Library { name: name.into(), version: FORMAT_VERSION, customs, entries }
    }

    /// Captures the customs and definitions made in a session.
    pub fn capture(name: &str, s: &Session) -> Library {
        let customs = s
            .customs()
            .iter()
            .filter_map(|(n, ty)| Some(CustomDecl { name: n.clone(), kind: CustomKind::of_type(*ty)? }))
            .collect();
        let entries = s.defs().iter().map(|(u, d)| Entry::new(u, d)).collect();
        Library::new(name, customs, entries)
    }

    pub fn from_json(text: &str) -> Result<Library, LibraryError> {
        let lib: Library = serde_json::from_str(text).map_err(|e| LibraryError::FormatError(e.to_string()))?;
        if lib.version != FORMAT_VERSION {
            return Err(LibraryError::FormatError(format!("unsupported version {}", lib.version)));
        }
        if lib.name.trim().is_empty() {
            return Err(LibraryError::FormatError("empty library name".into()));
        }
        Ok(lib)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("libraries serialize");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> Result<Library, LibraryError> {
        let text = fs::read_to_string(path).map_err(|e| match e.kind() {
            io::ErrorKind::NotFound => LibraryError::FileNotFound(path.display().to_string()),
            _ => LibraryError::Io(e),
        })?;
        Library::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<(), LibraryError> {
        Ok(fs::write(path, self.to_json())?)
    }

    /// Replays the library onto a session, skipping conflicts.
    pub fn load_into(&self, s: &mut Session, report: &mut LoadReport) {
        let source = Source::Library(self.name.as_str().into());
        for c in &self.customs {
            let ty = c.kind.tactic_type();
            if s.registry().get(&c.name).is_some_and(|e| e.ty == ty) && s.grammar().has_terminal(category(ty), &c.name) {
                continue;
            }
            if let Err(e) = s.declare_custom(&c.name, ty, None, false) {
                report.skipped.push(Skipped {
                    library: self.name.clone(),
                    index: None,
                    item: c.name.clone(),
                    reason: e.to_string(),
                    kind: e.kind(),
                });
            }
        }
        for (i, e) in self.entries.iter().enumerate() {
            match s.def_from(&e.utterance, &e.definition, source.clone()) {
                Ok(r) => report.rules_added += r.rules_added(),
                Err(err) => report.skipped.push(Skipped {
                    library: self.name.clone(),
                    index: Some(i),
                    item: e.utterance.clone(),
                    reason: err.to_string(),
                    kind: err.kind(),
                }),
            }
        }
        report.loaded.push(self.name.clone());
    }

    /// Replays onto a scratch session over the core grammar; the first
    /// failure is reported with its index.
    pub fn validate(&self, store: &TheoremStore) -> Result<(), LibraryError> {
        let mut s = Session::new(store.clone());
        for c in &self.customs {
            s.declare_custom(&c.name, c.kind.tactic_type(), None, false)
                .map_err(|error| LibraryError::CustomFailure { name: c.name.clone(), error })?;
        }
        for (index, e) in self.entries.iter().enumerate() {
            let source = Source::Library(self.name.as_str().into());
            s.def_from(&e.utterance, &e.definition, source).map_err(|error| LibraryError::ReplayFailure { index, error })?;
        }
        Ok(())
    }
}

fn category(ty: TacticType) -> Category {
    Category::of_type(ty).expect("custom kinds have categories")
}

/// Registered libraries by unique name.
#[derive(Clone, Debug, Default)]
pub struct LibraryStore {
    libs: BTreeMap<String, Arc<Library>>,
}

impl LibraryStore {
    pub fn new() -> LibraryStore {
        LibraryStore::default()
    }

    /// The libraries shipped with the crate.
    pub fn bundled(store: &TheoremStore) -> LibraryStore {
        let mut out = LibraryStore::new();
        for text in BUNDLED {
            let lib = Library::from_json(text).expect("bundled libraries parse");
            out.register(lib, store).expect("bundled libraries replay");
        }
        out
    }

    /// Validates by replay and stores the library.
    pub fn register(&mut self, lib: Library, store: &TheoremStore) -> Result<Arc<Library>, LibraryError> {
        if self.libs.contains_key(&lib.name) {
            return Err(LibraryError::DuplicateLibrary(lib.name));
        }
        lib.validate(store)?;
        let lib = Arc::new(lib);
        self.libs.insert(lib.name.clone(), lib.clone());
        Ok(lib)
    }

    pub fn get(&self, name: &str) -> Option<&Arc<Library>> {
        self.libs.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.libs.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<Library>> {
        self.libs.values()
    }

    /// Resolves each item as a registered name, else as a file path, and
    /// replays them in order. Resolution happens before any replay.
    pub fn load(&self, s: &mut Session, items: &[&str]) -> Result<LoadReport, LibraryError> {
        let libs = items
            .iter()
            .map(|x| match self.get(x) {
                Some(l) => Ok(l.clone()),
                None => Library::read(Path::new(x)).map(Arc::new),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut report = LoadReport::default();
        for l in libs {
            l.load_into(s, &mut report);
        }
        Ok(report)
    }
}

const BUNDLED: [&str; 2] = [include_str!("../libraries/tutorial.json"), include_str!("../libraries/logic.json")];

#[cfg(test)]
mod tests;
