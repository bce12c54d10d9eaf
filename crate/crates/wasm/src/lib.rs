//! Browser demo: a session over the bundled libraries with three
//! operations (parse a sentence, teach a sentence, step a proof). Every
//! method returns a JSON string; failures are `{"error", "diagnostic"}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use tactica::grammar::{Category, Source};
use tactica::kernel::TheoremStore;
use tactica::library::LibraryStore;
use tactica::parser::parse_sentence;
use tactica::session::{Mode, Session, SessionError};

#[wasm_bindgen]
pub struct Demo {
    session: Session,
}

fn error(e: &SessionError) -> Value {
    json!({ "error": e.kind(), "diagnostic": e.to_string() })
}

fn goals(s: &Session) -> Value {
    let Some(t) = s.tree() else { return json!({ "goals": [], "closed": false, "transcript": [] }) };
    let goals: Vec<Value> = t
        .leaves()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            json!({
                "assumptions": g.asms.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                "conclusion": g.concl.to_string(),
                "focused": i == t.focus(),
            })
        })
        .collect();
    json!({ "goals": goals, "closed": t.is_closed(), "transcript": s.transcript() })
}

#[wasm_bindgen]
impl Demo {
    /// A session with the bundled `tutorial` and `logic` libraries.
    #[wasm_bindgen(constructor)]
    pub fn new() -> Demo {
        let store = TheoremStore::bundled();
        let libs = LibraryStore::bundled(&store);
        let mut session = Session::new(store);
        libs.load(&mut session, &["tutorial", "logic"]).expect("bundled libraries load");
        Demo { session }
    }

    /// The meaning of a sentence and the rules its derivation uses.
    pub fn parse(&self, sentence: &str) -> String {
        let g = self.session.grammar();
        let out = match parse_sentence(g, sentence, Category::Root) {
            Ok(d) => {
                let rules: Vec<String> = d
                    .walk()
                    .iter()
                    .filter_map(|n| n.rule)
                    .filter(|r| g.rules()[*r].source != Source::Core)
                    .map(|r| g.rules()[r].to_string())
                    .collect();
                json!({ "tactic": d.expr().map(|e| e.render()), "rules": rules })
            }
            Err(e) => json!({ "error": "not_understood", "diagnostic": e.to_string() }),
        };
        out.to_string()
    }

    /// Teaches `utterance` by its definition.
    pub fn teach(&mut self, utterance: &str, definition: &str) -> String {
        match self.session.def(utterance, definition) {
            Ok(r) => json!({
                "rulesAdded": r.rules_added(),
                "rules": r.rules.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            }),
            Err(e) => error(&e),
        }
        .to_string()
    }

    /// Starts a proof of `goal`, abandoning any current one.
    pub fn start(&mut self, goal: &str) -> String {
        if self.session.tree().is_some() {
            self.session.abandon();
        }
        match self.session.start_proof(goal) {
            Ok(()) => goals(&self.session),
            Err(e) => error(&e),
        }
        .to_string()
    }

    /// Runs sentences stepwise on the first open goal.
    pub fn step(&mut self, sentences: &str) -> String {
        match self.session.run(sentences, Mode::Nlexplain) {
            Ok(steps) => {
                let mut v = goals(&self.session);
                v["fragments"] = steps.into_iter().map(|x| x.fragment).collect();
                v
            }
            Err(e) => error(&e),
        }
        .to_string()
    }

    pub fn undo(&mut self) -> String {
        match self.session.undo() {
            Ok(()) => goals(&self.session),
            Err(e) => error(&e),
        }
        .to_string()
    }

    /// The transcript as one core-language tactic.
    pub fn script(&self) -> String {
        self.session.export_script()
    }
}

impl Default for Demo {
    fn default() -> Demo {
        Demo::new()
    }
}
