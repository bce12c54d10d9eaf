//! Batch execution and export of proof files.

use std::fmt;

use serde::Serialize;

use tactica::grammar::Category;
use tactica::induce::custom_kind;
use tactica::session::proof_file::{self, FormatError, Item};
use tactica::session::{Session, SessionError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremResult {
    pub name: String,
    pub line: usize,
    /// `None` when the theorem was proved and stored.
    pub error: Option<String>,
}

impl TheoremResult {
    pub fn passed(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub theorems: Vec<TheoremResult>,
    /// Failed `def` and `custom` items.
    pub setup_errors: Vec<String>,
}

impl Report {
    /// True iff every item succeeded; an empty file passes.
    pub fn passed(&self) -> bool {
        self.setup_errors.is_empty() && self.theorems.iter().all(TheoremResult::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.setup_errors {
            writeln!(f, "error: {e}")?;
        }
        for t in &self.theorems {
            match &t.error {
                None => writeln!(f, "PASS {} (line {})", t.name, t.line)?,
                Some(e) => writeln!(f, "FAIL {} (line {}): {e}", t.name, t.line)?,
            }
        }
        let passed = self.theorems.iter().filter(|t| t.passed()).count();
        write!(f, "{passed}/{} theorems proved", self.theorems.len())
    }
}

fn declare(s: &mut Session, kind: &str, name: &str) -> Result<(), String> {
    let ty = custom_kind(kind).ok_or_else(|| format!("custom {name}: unknown kind `{kind}`"))?;
    let cat = Category::of_type(ty).expect("custom kinds have categories");
    // Already declared identically, e.g. by a loaded library.
    if s.registry().type_of(name) == Some(ty) && s.grammar().has_terminal(cat, name) {
        return Ok(());
    }
    s.add_custom(name, ty, None).map_err(|e| format!("custom {name}: {e}"))
}

/// Proves one theorem block, storing it under `name`. The session is left
/// without a proof in progress.
fn prove(s: &mut Session, name: &str, goal: &str, proof: &str) -> Result<(), SessionError> {
    s.start_proof(goal)?;
    let r = s.nltac(proof).and_then(|_| s.qed(Some(name)).map(|_| ()));
    if r.is_err() {
        s.abandon();
    }
    r
}

/// Executes every item in order. Theorems that fail do not stop the run.
pub fn run_text(s: &mut Session, text: &str) -> Result<Report, FormatError> {
    let mut report = Report::default();
    for item in proof_file::parse(text)? {
        match item {
            Item::Custom { kind, name } => {
                if let Err(e) = declare(s, &kind, &name) {
                    report.setup_errors.push(e);
                }
            }
            Item::Def { utterance, definition } => {
                if let Err(e) = s.def(&utterance, &definition) {
                    report.setup_errors.push(format!("def \"{utterance}\": {e}"));
                }
            }
            Item::Theorem { name, goal, proof, line } => {
                let error = prove(s, &name, &goal, &proof).err().map(|e| e.to_string());
                report.theorems.push(TheoremResult { name, line, error });
            }
        }
    }
    Ok(report)
}

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Setup(String),
    #[error("line {line}: {msg}")]
    Theorem { line: usize, msg: String },
}

/// Rewrites a proof file so that every proof is a single tactic in the
/// core language. Custom declarations are kept; definitions are dropped
/// because nothing in the output uses them.
pub fn export_text(s: &mut Session, text: &str) -> Result<String, ExportError> {
    let mut out = String::new();
    for item in proof_file::parse(text)? {
        match &item {
            Item::Custom { kind, name } => {
                declare(s, kind, name).map_err(ExportError::Setup)?;
                out.push_str(&item.to_string());
            }
            Item::Def { utterance, definition } => {
                s.def(utterance, definition).map_err(|e| ExportError::Setup(format!("def \"{utterance}\": {e}")))?;
            }
            Item::Theorem { name, goal, proof, line } => {
                let fail = |e: SessionError| ExportError::Theorem { line: *line, msg: format!("theorem {name}: {e}") };
                s.start_proof(goal).map_err(fail)?;
                let script = s.nltac(proof).map(|_| s.export_script());
                let script = match script.and_then(|sc| s.qed(Some(name)).map(|_| sc)) {
                    Ok(sc) => sc,
                    Err(e) => {
                        s.abandon();
                        return Err(fail(e));
                    }
                };
                let exported = Item::Theorem { name: name.clone(), goal: goal.clone(), proof: format!("{script}."), line: *line };
                out.push_str(&exported.to_string());
            }
        }
    }
    Ok(out)
}
