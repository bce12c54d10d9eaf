//! Invariants as properties.

mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use common::*;
use tactica::grammar::core::core_grammar;
use tactica::grammar::{Category, Sem, Source};
use tactica::induce;
use tactica::kernel::{parse_term, TheoremStore};
use tactica::library::LibraryStore;
use tactica::parser::{parse_sentence, render_value};
use tactica::session::{replay_script, split_sentences, Session};
use tactica::tactic::Registry;

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn library_session() -> Session {
    let st = TheoremStore::bundled();
    let libs = LibraryStore::bundled(&st);
    let mut s = Session::new(st);
    libs.load(&mut s, &["tutorial", "logic"]).unwrap();
    s
}

/// Everything undo must restore.
fn snapshot(s: &Session) -> String {
    format!(
        "{}\n{:?}\n{:?}\n{}",
        s.tree().map(|t| t.to_string()).unwrap_or_default(),
        s.transcript(),
        s.defs(),
        s.grammar().dump()
    )
}

const SENTENCES: [&str; 14] = [
    "introduce assumptions",
    "simplify",
    "trivial",
    "split the conjunction",
    "assume the hypothesis",
    "contradiction",
    "case split",
    "case analysis on 'n'",
    "induction on 'n'",
    "simplify with [SUM_DEF]",
    "follows from [ADD_COMM]",
    "Next Goal",
    "no such sentence",
    "suppose not",
];

const GOALS: [&str; 6] =
    ["!n. 2 * sum n = n * (n + 1)", "p /\\ q ==> q /\\ p", "(p <=> q) ==> (q <=> p)", "n + 0 = n", "~(n < 0)", "!n. 0 <= sum n"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rendering_reparses_to_the_same_value(seed in any::<u64>()) {
        let st = TheoremStore::bundled();
        let g = core_grammar(&Registry::builtin(&st));
        let sampler = Sampler::new(&g, strings(&THEOREMS), strings(&QUOTATIONS), 4);
        let mut rng = StdRng::seed_from_u64(seed);
        let sample = sampler.sample(&mut rng, Category::Root).unwrap();
        let text = render_value(&sample.value);
        let d = parse_sentence(&g, &text, Category::Root).unwrap();
        prop_assert_eq!(&d.value, &sample.value, "{}", text);
    }

    #[test]
    fn undo_restores_every_prior_state(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut s = library_session();
        s.start_proof(GOALS.choose(&mut rng).unwrap()).unwrap();
        let mut seen = vec![snapshot(&s)];
        for _ in 0..6 {
            let sentence = SENTENCES.choose(&mut rng).unwrap();
            let before = snapshot(&s);
            match s.nltac(sentence) {
                Ok(()) => seen.push(snapshot(&s)),
                Err(_) => prop_assert_eq!(snapshot(&s), before),
            }
        }
        while seen.len() > 1 {
            seen.pop();
            s.undo().unwrap();
            prop_assert_eq!(&snapshot(&s), seen.last().unwrap());
        }
    }

    #[test]
    fn a_script_equals_its_sentences_in_turn(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let goal = GOALS.choose(&mut rng).unwrap();
        let script: Vec<&str> = (0..3).map(|_| *SENTENCES.choose(&mut rng).unwrap()).collect();
        let mut whole = library_session();
        whole.start_proof(goal).unwrap();
        let batch = whole.nltac(&format!("{}.", script.join(". ")));
        let mut stepped = library_session();
        stepped.start_proof(goal).unwrap();
        let before = snapshot(&stepped);
        let steps: Result<(), _> = script.iter().try_for_each(|x| stepped.nltac(x));
        prop_assert_eq!(batch.is_ok(), steps.is_ok());
        if batch.is_ok() {
            prop_assert_eq!(snapshot(&whole), snapshot(&stepped));
        } else {
            prop_assert_eq!(snapshot(&whole), before);
        }
    }

    #[test]
    fn exported_scripts_replay_to_the_same_goals(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let goal = GOALS.choose(&mut rng).unwrap();
        let mut s = library_session();
        s.start_proof(goal).unwrap();
        for _ in 0..4 {
            let _ = s.nlexplain(SENTENCES.choose(&mut rng).unwrap());
        }
        let script = s.export_script();
        let goals = replay_script(&s.export_grammar(), s.registry(), s.store(), &parse_term(goal).unwrap(), &script).unwrap();
        let open: Vec<String> = s.tree().unwrap().leaves().iter().map(|g| g.to_string()).collect();
        prop_assert_eq!(goals.iter().map(|g| g.to_string()).collect::<Vec<_>>(), open, "{}", script);
    }

    #[test]
    fn library_loading_is_deterministic(order in Just(["tutorial", "logic"]).prop_shuffle()) {
        let st = TheoremStore::bundled();
        let libs = LibraryStore::bundled(&st);
        let dump = || {
            let mut s = Session::new(st.clone());
            libs.load(&mut s, &order).unwrap();
            s.grammar().dump()
        };
        prop_assert_eq!(dump(), dump());
    }

    #[test]
    fn splitting_recovers_sentences(picks in prop::collection::vec(0..SENTENCES.len(), 0..8)) {
        let sentences: Vec<&str> = picks.iter().map(|i| SENTENCES[*i]).collect();
        let script: String = sentences.iter().map(|x| format!("{x}.\n")).collect();
        prop_assert_eq!(split_sentences(&script).unwrap(), sentences);
    }

    #[test]
    fn definitions_extend_without_mutating_snapshots(i in 0..THEOREMS.len(), j in 0..THEOREMS.len()) {
        let st = TheoremStore::bundled();
        let g = core_grammar(&Registry::builtin(&st));
        let before = g.dump();
        let r = induce::def(&g, &format!("use {} please", THEOREMS[i]), &format!("irule {}", THEOREMS[i]), Source::Induced).unwrap();
        prop_assert_eq!(g.dump(), before);
        prop_assert_eq!(r.rules_added(), 2);
        let d = parse_sentence(&r.grammar, &format!("use {} please", THEOREMS[j]), Category::Root).unwrap();
        let want = parse_sentence(&g, &format!("irule {}", THEOREMS[j]), Category::Root).unwrap();
        prop_assert_eq!(&d.value, &want.value);
        prop_assert!(matches!(d.value, Sem::Expr(_)));
    }
}
