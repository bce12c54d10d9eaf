//! Proof sessions: a grammar snapshot, a registry, a theorem store and an
//! optional goal tree, with an undo history of whole-state snapshots.
//!
//! Every executed sentence appends one rendered fragment to the transcript.
//! Fragments joined by `\\` form a script that the core grammar alone
//! parses back into a tactic reproducing the session's open goals.

pub mod proof_file;
pub mod split;

use std::fmt;
use std::sync::Arc;

use crate::grammar::{core_grammar, Category, Grammar, Source};
use crate::induce::{self, CustomError, DefError, DefResult};
use crate::kernel::{parse_term, replay, Term, TheoremStore, Thm};
use crate::parser::{self, ParseError};
use crate::tactic::expr::{InfixOp, TacticExpr};
use crate::tactic::value::{check_validity, read_prop, Justification, Outcome, TacticError};
use crate::tactic::{apply_tactic, eval, Goal, Registry, TacticType, TacticValue};

pub use split::{split_sentences, Directive};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SessionError {
    #[error("not understood: `{sentence}`: {diagnostic}")]
    NotUnderstood { sentence: String, diagnostic: String },
    #[error("`{sentence}` failed: {reason}")]
    TacticFails { sentence: String, reason: String },
    #[error("no open goal matches `{0}`")]
    NoSuchSubgoal(String),
    #[error("all goals are proved")]
    ProofAlreadyComplete,
    #[error("nothing to undo")]
    NothingToUndo,
    #[error("proof incomplete: {0} open goals")]
    ProofIncomplete(usize),
    #[error("a proof is already in progress")]
    SessionBusy,
    #[error("no proof in progress")]
    NoProof,
    #[error("syntax error: {0}")]
    SyntaxError(String),
    #[error("`{0}` selects subgoals, which stepwise explanation does not support")]
    DirectiveNotSupported(String),
    #[error("invalid justification: {0}")]
    JustificationInvalid(String),
    #[error(transparent)]
    Def(#[from] DefError),
    #[error(transparent)]
    Custom(#[from] CustomError),
}

impl SessionError {
    /// Stable snake_case identifier for wire formats.
    pub fn kind(&self) -> &'static str {
        match self {
            SessionError::NotUnderstood { .. } => "not_understood",
            SessionError::TacticFails { .. } => "tactic_fails",
            SessionError::NoSuchSubgoal(_) => "no_such_subgoal",
            SessionError::ProofAlreadyComplete => "proof_already_complete",
            SessionError::NothingToUndo => "nothing_to_undo",
            SessionError::ProofIncomplete(_) => "proof_incomplete",
            SessionError::SessionBusy => "session_busy",
            SessionError::NoProof => "no_proof",
            SessionError::SyntaxError(_) => "syntax_error",
            SessionError::DirectiveNotSupported(_) => "directive_not_supported",
            SessionError::JustificationInvalid(_) => "justification_invalid",
            SessionError::Def(e) => match e {
                DefError::DefinitionUnparsable(_) => "definition_unparsable",
                DefError::DefinitionAmbiguous(_) => "definition_ambiguous",
                DefError::AlreadyDefined { .. } => "already_defined",
                DefError::WouldBeAmbiguous(_) => "would_be_ambiguous",
                DefError::EmptyUtterance => "empty_utterance",
                DefError::Grammar(_) => "malformed_rule",
            },
            SessionError::Custom(e) => match e {
                CustomError::Duplicate(_) => "duplicate_custom",
                CustomError::InvalidName(_) => "invalid_custom_name",
                CustomError::InvalidKind => "invalid_custom_kind",
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, SessionError>;

/// Open leaves of a proof tree, left to right, with the composed
/// justification from leaf theorems to the root theorem.
#[derive(Clone, Debug)]
pub struct GoalTree {
    pub root: Goal,
    leaves: Vec<Goal>,
    just: Justification,
    focus: usize,
}

impl GoalTree {
    pub fn new(root: Goal) -> GoalTree {
        GoalTree { leaves: vec![root.clone()], root, just: Justification::identity(), focus: 0 }
    }

    pub fn leaves(&self) -> &[Goal] {
        &self.leaves
    }

    pub fn focus(&self) -> usize {
        self.focus
    }

    pub fn is_closed(&self) -> bool {
        self.leaves.is_empty()
    }

    /// Replaces leaf `k` by the outcome's subgoals.
    fn splice(&mut self, k: usize, o: Outcome) {
        let n = o.goals.len();
        let (outer, inner) = (self.just.clone(), o.just);
        self.leaves.splice(k..k + 1, o.goals);
        self.just = Justification::new(move |ths| {
            let mid = inner.call(&ths[k..k + n])?;
            let mut all = ths[..k].to_vec();
            all.push(mid);
            all.extend_from_slice(&ths[k + n..]);
            outer.call(&all)
        });
        self.focus = self.focus.min(self.leaves.len().saturating_sub(1));
    }

    /// Collapses the justifications of a closed tree.
    pub fn collapse(&self) -> std::result::Result<Thm, TacticError> {
        check_validity(&self.root, &Outcome { goals: self.leaves.clone(), just: self.just.clone() })
    }
}

impl fmt::Display for GoalTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_closed() {
            return f.write_str("No goals remain.");
        }
        writeln!(f, "{} open goal{}", self.leaves.len(), if self.leaves.len() == 1 { "" } else { "s" })?;
        for (i, g) in self.leaves.iter().enumerate() {
            let mark = if i == self.focus { "*" } else { " " };
            writeln!(f, "\n{mark}Goal {}:\n{g}", i + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct State {
    grammar: Grammar,
    registry: Registry,
    store: Arc<TheoremStore>,
    tree: Option<GoalTree>,
    transcript: Vec<String>,
    /// Successful definitions and custom declarations, in order.
    defs: Vec<(String, String)>,
    customs: Vec<(String, TacticType)>,
}

#[derive(Clone, Debug)]
struct Frame {
    sentence: String,
    prior: State,
}

/// Result of one stepwise sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Explained {
    pub fragment: String,
    pub goals: String,
}

#[derive(Clone, Debug)]
pub struct Session {
    state: State,
    history: Vec<Frame>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Batch execution with navigation directives.
    Nltac,
    /// Stepwise execution on the first open goal.
    Nlexplain,
}

impl Session {
    pub fn new(store: TheoremStore) -> Session {
        let registry = Registry::builtin(&store);
        let grammar = core_grammar(&registry);
        Session::with(grammar, registry, Arc::new(store))
    }

    pub fn with(grammar: Grammar, registry: Registry, store: Arc<TheoremStore>) -> Session {
        Session { state: State { grammar, registry, store, tree: None, transcript: vec![], defs: vec![], customs: vec![] }, history: vec![] }
    }

    pub fn grammar(&self) -> &Grammar {
        &self.state.grammar
    }

    pub fn registry(&self) -> &Registry {
        &self.state.registry
    }

    pub fn store(&self) -> &TheoremStore {
        &self.state.store
    }

    pub fn tree(&self) -> Option<&GoalTree> {
        self.state.tree.as_ref()
    }

    pub fn transcript(&self) -> &[String] {
        &self.state.transcript
    }

    /// Definitions made in this session that extended the grammar, in order.
    pub fn defs(&self) -> &[(String, String)] {
        &self.state.defs
    }

    pub fn customs(&self) -> &[(String, TacticType)] {
        &self.state.customs
    }

    /// Labels of the undoable steps, oldest first.
    pub fn history(&self) -> impl Iterator<Item = &str> {
        self.history.iter().map(|f| f.sentence.as_str())
    }

    /// Replaces grammar and registry without a history frame; for loading
    /// libraries before any interaction.
    pub fn set_language(&mut self, grammar: Grammar, registry: Registry) {
        self.state.grammar = grammar;
        self.state.registry = registry;
    }

    fn push(&mut self, sentence: &str) {
        self.history.push(Frame { sentence: sentence.into(), prior: self.state.clone() });
    }

    pub fn start_proof(&mut self, goal: &str) -> Result<()> {
        if self.state.tree.as_ref().is_some_and(|t| !t.is_closed()) {
            return Err(SessionError::SessionBusy);
        }
        let t = parse_term(goal).map_err(|e| SessionError::SyntaxError(e.to_string()))?;
        if t.sort() != crate::kernel::Sort::Bool {
            return Err(SessionError::SyntaxError(format!("`{goal}` is not a proposition")));
        }
        self.push(&format!("start {goal}"));
        self.state.tree = Some(GoalTree::new(Goal::new(t)));
        self.state.transcript.clear();
        Ok(())
    }

    /// Drops the current proof, keeping the language.
    pub fn abandon(&mut self) {
        self.push("abandon");
        self.state.tree = None;
        self.state.transcript.clear();
    }

    pub fn undo(&mut self) -> Result<()> {
        let f = self.history.pop().ok_or(SessionError::NothingToUndo)?;
        self.state = f.prior;
        Ok(())
    }

    pub fn def(&mut self, utterance: &str, definition: &str) -> Result<DefResult> {
        self.def_from(utterance, definition, Source::Induced)
    }

    pub fn def_from(&mut self, utterance: &str, definition: &str, source: Source) -> Result<DefResult> {
        let r = induce::def(&self.state.grammar, utterance, definition, source)?;
        if r.rules_added() > 0 {
            self.push(&format!("def {utterance}"));
            self.state.grammar = r.grammar.clone();
            if r.rules.iter().all(|x| x.source == Source::Induced) {
                self.state.defs.push((utterance.into(), definition.into()));
            }
        }
        Ok(r)
    }

    pub fn add_custom(&mut self, name: &str, ty: TacticType, imp: Option<TacticValue>) -> Result<()> {
        self.declare_custom(name, ty, imp, true)
    }

    /// Declares a custom; `own` marks declarations made in this session
    /// rather than loaded from a library.
    pub fn declare_custom(&mut self, name: &str, ty: TacticType, imp: Option<TacticValue>, own: bool) -> Result<()> {
        let (g, reg) = induce::add_custom(&self.state.grammar, &self.state.registry, name, ty, imp)?;
        self.push(&format!("custom {name}"));
        self.state.grammar = g;
        self.state.registry = reg;
        if own {
            self.state.customs.push((name.into(), ty));
        }
        Ok(())
    }

    /// Runs a period-separated script. Atomic: on error nothing changes.
    pub fn nltac(&mut self, script: &str) -> Result<()> {
        self.run(script, Mode::Nltac).map(|_| ())
    }

    /// Runs one or more sentences stepwise, returning a fragment per sentence.
    pub fn nlexplain(&mut self, script: &str) -> Result<Vec<Explained>> {
        self.run(script, Mode::Nlexplain)
    }

    pub fn run(&mut self, script: &str, mode: Mode) -> Result<Vec<Explained>> {
        let sentences = split_sentences(script).map_err(|e| SessionError::NotUnderstood {
            sentence: script.trim().into(),
            diagnostic: e.to_string(),
        })?;
        let saved = (self.state.clone(), self.history.len());
        let mut out = Vec::new();
        for s in &sentences {
            match self.step(s, mode) {
                Ok(Some(x)) => out.push(x),
                Ok(None) => {}
                Err(e) => {
                    self.state = saved.0;
                    self.history.truncate(saved.1);
                    return Err(e);
                }
            }
        }
        Ok(out)
    }

    /// Executes one sentence; `None` for directives.
    fn step(&mut self, sentence: &str, mode: Mode) -> Result<Option<Explained>> {
        let tree = self.state.tree.as_ref().ok_or(SessionError::NoProof)?;
        if tree.is_closed() {
            return Err(SessionError::ProofAlreadyComplete);
        }
        if let Some(d) = Directive::parse(sentence) {
            if mode == Mode::Nlexplain {
                return Err(SessionError::DirectiveNotSupported(sentence.into()));
            }
            let focus = match d {
                Directive::NextGoal => (tree.focus + 1) % tree.leaves.len(),
                Directive::End => 0,
                Directive::Goal(q) => tree
                    .leaves
                    .iter()
                    .position(|g| read_prop(&q, g).is_ok_and(|t| t.alpha_eq(&g.concl)))
                    .ok_or_else(|| SessionError::NoSuchSubgoal(q.clone()))?,
            };
            self.push(sentence);
            self.state.tree.as_mut().expect("checked").focus = focus;
            return Ok(None);
        }
        let d = parser::parse_sentence(&self.state.grammar, sentence, Category::Root).map_err(|e| {
            SessionError::NotUnderstood {
                sentence: sentence.into(),
                diagnostic: match e {
                    ParseError::Ambiguous(vs) => format!("ambiguous between {}", vs.join(" and ")),
                    e => e.to_string(),
                },
            }
        })?;
        let expr = d.expr().expect("ROOT values are expressions").clone();
        let fails = |e: TacticError| SessionError::TacticFails { sentence: sentence.into(), reason: e.to_string() };
        let tac = eval::tac(&expr, &self.state.registry, &self.state.store).map_err(fails)?;
        let k = if mode == Mode::Nlexplain { 0 } else { tree.focus };
        let o = apply_tactic(&tac, &tree.leaves[k]).map_err(fails)?;
        let fragment = if k == 0 { expr } else { TacticExpr::nth(k as u32 + 1, expr) }.render();
        self.push(sentence);
        let tree = self.state.tree.as_mut().expect("checked");
        tree.splice(k, o);
        let goals = match tree.leaves.get(tree.focus) {
            Some(g) => g.to_string(),
            None => "No goals remain.".into(),
        };
        self.state.transcript.push(fragment.clone());
        Ok(Some(Explained { fragment, goals }))
    }

    /// The transcript joined with `\\`.
    pub fn export_script(&self) -> String {
        join_fragments(&self.state.transcript)
    }

    /// The grammar an exported script is checked against: core rules and
    /// custom terminals, without induced or library rules.
    pub fn export_grammar(&self) -> Grammar {
        let rules = self.state.grammar.rules().iter().filter(|r| matches!(r.source, Source::Core | Source::Custom)).cloned().collect();
        Grammar::new(rules, self.state.grammar.lookups().clone()).expect("subset of a well-formed grammar")
    }

    /// Collapses the closed tree into a theorem, checks it by kernel replay
    /// and, when `name` is given, adds it to the store.
    pub fn qed(&mut self, name: Option<&str>) -> Result<Thm> {
        let tree = self.state.tree.as_ref().ok_or(SessionError::NoProof)?;
        if !tree.is_closed() {
            return Err(SessionError::ProofIncomplete(tree.leaves.len()));
        }
        let th = tree.collapse().map_err(|e| SessionError::JustificationInvalid(e.to_string()))?;
        replay(&th, &self.state.store).map_err(|e| SessionError::JustificationInvalid(e.to_string()))?;
        if let Some(n) = name {
            self.push(&format!("qed {n}"));
            Arc::make_mut(&mut self.state.store).insert(n, th.concl().clone());
            self.state.tree = None;
            self.state.transcript.clear();
        }
        Ok(th)
    }
}

/// Joins fragments with `\\`, parenthesizing any that would otherwise
/// regroup.
pub fn join_fragments(fragments: &[String]) -> String {
    let wrap = |f: &String| {
        let loose = parser::tokenize(f).is_ok_and(|ts| ts.iter().any(|t| *t.text == *InfixOp::ThenLt.symbol()));
        if loose {
            format!("( {f} )")
        } else {
            f.clone()
        }
    };
    fragments.iter().map(wrap).collect::<Vec<_>>().join(" \\\\ ")
}

/// Parses `script` under `g` and applies it to `goal`.
pub fn replay_script(
    g: &Grammar,
    reg: &Registry,
    store: &TheoremStore,
    goal: &Term,
    script: &str,
) -> std::result::Result<Vec<Goal>, String> {
    if script.trim().is_empty() {
        return Ok(vec![Goal::new(goal.clone())]);
    }
    let d = parser::parse_sentence(g, script, Category::Root).map_err(|e| e.to_string())?;
    let t = eval::tac(d.expr().expect("ROOT values are expressions"), reg, store).map_err(|e| e.to_string())?;
    let o = apply_tactic(&t, &Goal::new(goal.clone())).map_err(|e| e.to_string())?;
    Ok(o.goals)
}
