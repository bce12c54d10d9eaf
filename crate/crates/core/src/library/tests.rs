use super::*;
use crate::session::SessionError;

fn store() -> TheoremStore {
    TheoremStore::bundled()
}

#[test]
fn bundled_libraries_register_and_load() {
    let libs = LibraryStore::bundled(&store());
    assert_eq!(libs.names().collect::<Vec<_>>(), ["logic", "tutorial"]);
    let mut s = Session::new(store());
    let r = libs.load(&mut s, &["tutorial"]).unwrap();
    assert!(r.skipped.is_empty(), "{:?}", r.skipped);
    s.start_proof("p ==> p").unwrap();
    s.nltac("introduce assumptions. simplify.").unwrap();
    assert!(s.tree().unwrap().is_closed());
}

#[test]
fn json_format_is_strict() {
    let lib = Library::new(
        "x",
        vec![CustomDecl { name: "MY_TAC".into(), kind: CustomKind::ThmlistTactic }],
        vec![Entry::new("go", "fs [ ]")],
    );
    let text = lib.to_json();
    let keys: Vec<usize> = ["\"name\"", "\"version\"", "\"customs\"", "\"entries\""].iter().map(|k| text.find(k).unwrap()).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "{text}");
    assert!(text.contains("\"thmlist_tactic\""));
    assert_eq!(Library::from_json(&text).unwrap(), lib);
    let extra = text.replacen("\"version\": 1,", "\"version\": 1, \"extra\": 0,", 1);
    assert!(matches!(Library::from_json(&extra), Err(LibraryError::FormatError(_))));
    let v2 = text.replacen("\"version\": 1", "\"version\": 2", 1);
    assert!(matches!(Library::from_json(&v2), Err(LibraryError::FormatError(_))));
    assert!(matches!(Library::from_json("{"), Err(LibraryError::FormatError(_))));
}

#[test]
fn register_validates_by_replay() {
    let mut libs = LibraryStore::new();
    let ok = Library::new("a", vec![], vec![Entry::new("case split", "EQ_TAC"), Entry::new("suppose not", "CCONTR_TAC THEN fs [ ]")]);
    libs.register(ok.clone(), &store()).unwrap();
    assert!(matches!(libs.register(ok, &store()), Err(LibraryError::DuplicateLibrary(n)) if n == "a"));
    let bad = Library::new("b", vec![], vec![Entry::new("fine", "fs [ ]"), Entry::new("broken", "fs [")]);
    match libs.register(bad, &store()) {
        Err(LibraryError::ReplayFailure { index: 1, error: SessionError::Def(_) }) => {}
        other => panic!("{other:?}"),
    }
    assert!(libs.get("b").is_none());
}

#[test]
fn collisions_are_skipped_and_reported() {
    let mut libs = LibraryStore::new();
    libs.register(Library::new("one", vec![], vec![Entry::new("finish", "fs [ ]")]), &store()).unwrap();
    libs.register(
        Library::new("two", vec![], vec![Entry::new("finish", "metis_tac [ ]"), Entry::new("wrap up", "DECIDE_TAC")]),
        &store(),
    )
    .unwrap();
    let mut s = Session::new(store());
    let r = libs.load(&mut s, &["one", "two"]).unwrap();
    assert_eq!(r.loaded, ["one", "two"]);
    assert_eq!(r.skipped.len(), 1);
    assert_eq!((r.skipped[0].library.as_str(), r.skipped[0].index, r.skipped[0].kind), ("two", Some(0), "already_defined"));
    assert_eq!(r.rules_added, 2);
    let before = s.grammar().dump();
    assert_eq!(libs.load(&mut s, &[]).unwrap(), LoadReport::default());
    assert_eq!(s.grammar().dump(), before);
}

#[test]
fn files_round_trip_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = Session::new(store());
    s.add_custom("MY_SOLVER", TacticType::Tac, None).unwrap();
    s.def("simplify with ADD_ASSOC", "fs [ADD_ASSOC]").unwrap();
    s.def("finish", "MY_SOLVER").unwrap();
    let lib = Library::capture("mine", &s);
    assert_eq!(lib.entries.iter().map(|e| e.utterance.as_str()).collect::<Vec<_>>(), ["simplify with ADD_ASSOC", "finish"]);
    let path = dir.path().join("mine.json");
    lib.save(&path).unwrap();
    assert_eq!(Library::read(&path).unwrap(), lib);
    let libs = LibraryStore::new();
    let (mut a, mut b) = (Session::new(store()), Session::new(store()));
    let mut ra = LoadReport::default();
    lib.load_into(&mut a, &mut ra);
    libs.load(&mut b, &[path.to_str().unwrap()]).unwrap();
    assert_eq!(a.grammar().dump(), b.grammar().dump());
    let missing = dir.path().join("nope.json");
    assert!(matches!(libs.load(&mut b, &[missing.to_str().unwrap()]), Err(LibraryError::FileNotFound(_))));
    assert!(matches!(lib.save(&dir.path().join("no/such/dir.json")), Err(LibraryError::Io(_))));
}
