use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use tactica::session::{Mode, Session};
use tactica_cli::server::{router, state_view, AppState, StateView};
use tactica_cli::{repl, session_with};

fn app() -> Router {
    router(Arc::new(AppState::new(&[]).unwrap()))
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = req.body(body.map(|b| Body::from(b.to_string())).unwrap_or_else(Body::empty)).unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let v = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
    (status, v)
}

async fn new_session(app: &Router, libs: &[&str]) -> String {
    let (st, v) = call(app, Method::POST, "/sessions", Some(json!({ "libraries": libs }))).await;
    assert_eq!(st, StatusCode::OK, "{v}");
    v["id"].as_str().unwrap().to_string()
}

const GOAL: &str = "!n. 2 * sum n = n * (n + 1)";
const SCRIPT: [&str; 6] = [
    "introduce assumptions",
    "induction on 'n'",
    "simplify with [SUM_DEF]",
    "rewrite with [SUM_DEF, LEFT_ADD_DISTRIB]",
    "simplify",
    "trivial",
];

#[tokio::test]
async fn stepping_a_proof_end_to_end() {
    let app = app();
    let id = new_session(&app, &["tutorial"]).await;
    let (st, v) = call(&app, Method::POST, &format!("/sessions/{id}/start"), Some(json!({ "goal": GOAL }))).await;
    assert_eq!(st, StatusCode::OK, "{v}");
    assert_eq!(v["goals"][0]["conclusion"], GOAL);
    assert_eq!(v["goals"][0]["focused"], true);

    let mut fragments = Vec::new();
    for (i, sentence) in SCRIPT.iter().enumerate() {
        let body = json!({ "sentence": sentence, "mode": "nlexplain" });
        let (st, v) = call(&app, Method::POST, &format!("/sessions/{id}/step"), Some(body)).await;
        assert_eq!(st, StatusCode::OK, "{sentence}: {v}");
        assert_eq!(v["ok"], true);
        fragments.push(v["fragment"].as_str().unwrap().to_string());
        let (_, state) = call(&app, Method::GET, &format!("/sessions/{id}/state"), None).await;
        assert_eq!(state["transcript"].as_array().unwrap().len(), i + 1);
    }
    let (_, state) = call(&app, Method::GET, &format!("/sessions/{id}/state"), None).await;
    assert_eq!(state["closed"], true);
    assert_eq!(state["goals"], json!([]));
    let (_, v) = call(&app, Method::GET, &format!("/sessions/{id}/script"), None).await;
    assert_eq!(v["script"], fragments.join(" \\\\ "));
    let (st, v) = call(&app, Method::POST, &format!("/sessions/{id}/qed"), Some(json!({ "name": "sum_formula" }))).await;
    assert_eq!(st, StatusCode::OK, "{v}");
    assert_eq!(v["theorem"], GOAL);
}

#[tokio::test]
async fn unknown_sentences_report_not_understood() {
    let app = app();
    let id = new_session(&app, &[]).await;
    call(&app, Method::POST, &format!("/sessions/{id}/start"), Some(json!({ "goal": "p ==> p" }))).await;
    let (st, v) = call(&app, Method::POST, &format!("/sessions/{id}/step"), Some(json!({ "sentence": "assume it" }))).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["error"], "not_understood");
    assert!(v["diagnostic"].as_str().unwrap().contains("assume"), "{v}");

    // Teaching the sentence and retrying advances the proof.
    let (st, v) = call(&app, Method::POST, &format!("/sessions/{id}/def"), Some(json!({ "utterance": "assume it", "definition": "strip_tac" }))).await;
    assert_eq!(st, StatusCode::OK, "{v}");
    assert_eq!(v["rulesAdded"], 1);
    let (st, v) = call(&app, Method::POST, &format!("/sessions/{id}/step"), Some(json!({ "sentence": "assume it. simplify" }))).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY, "{v}");
    let (st, v) = call(&app, Method::POST, &format!("/sessions/{id}/step"), Some(json!({ "sentence": "assume it. fs []." }))).await;
    assert_eq!(st, StatusCode::OK, "{v}");
    assert_eq!(v["closed"], true);
    assert_eq!(v["fragments"].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn definitions_customs_and_undo() {
    let app = app();
    let id = new_session(&app, &[]).await;
    let def = json!({ "utterance": "simplify with ADD_ASSOC", "definition": "fs [ADD_ASSOC]" });
    let (_, v) = call(&app, Method::POST, &format!("/sessions/{id}/def"), Some(def.clone())).await;
    assert_eq!(v["rulesAdded"], 2);
    let (st, v) = call(&app, Method::POST, &format!("/sessions/{id}/def"), Some(json!({ "utterance": "simplify with ADD_ASSOC", "definition": "rw [ ]" }))).await;
    assert_eq!(st, StatusCode::CONFLICT);
    assert_eq!(v["error"], "already_defined");

    let (st, _) = call(&app, Method::POST, &format!("/sessions/{id}/custom"), Some(json!({ "name": "MY_TAC", "kind": "tactic" }))).await;
    assert_eq!(st, StatusCode::OK);
    let (st, v) = call(&app, Method::POST, &format!("/sessions/{id}/custom"), Some(json!({ "name": "MY_TAC", "kind": "tactic" }))).await;
    assert_eq!((st, v["error"].as_str()), (StatusCode::CONFLICT, Some("duplicate_custom")));

    let (_, v) = call(&app, Method::GET, &format!("/grammar?session={id}"), None).await;
    assert!(v["dump"].as_str().unwrap().contains("MY_TAC"));
    call(&app, Method::POST, &format!("/sessions/{id}/undo"), None).await;
    call(&app, Method::POST, &format!("/sessions/{id}/undo"), None).await;
    let (_, v) = call(&app, Method::GET, &format!("/grammar?session={id}"), None).await;
    let (_, base) = call(&app, Method::GET, "/grammar", None).await;
    assert_eq!(v["dump"], base["dump"]);
    let (st, v) = call(&app, Method::POST, &format!("/sessions/{id}/undo"), None).await;
    assert_eq!((st, v["error"].as_str()), (StatusCode::CONFLICT, Some("nothing_to_undo")));
}

#[tokio::test]
async fn sessions_are_isolated_and_deletable() {
    let app = app();
    let a = new_session(&app, &["tutorial"]).await;
    let b = new_session(&app, &["tutorial"]).await;
    assert_ne!(a, b);
    call(&app, Method::POST, &format!("/sessions/{a}/def"), Some(json!({ "utterance": "finish", "definition": "fs [ ]" }))).await;
    let (_, ga) = call(&app, Method::GET, &format!("/grammar?session={a}"), None).await;
    let (_, gb) = call(&app, Method::GET, &format!("/grammar?session={b}"), None).await;
    assert_ne!(ga["dump"], gb["dump"]);
    let (_, listed) = call(&app, Method::GET, "/sessions", None).await;
    assert_eq!(listed.as_array().unwrap().len(), 2);

    let (st, _) = call(&app, Method::DELETE, &format!("/sessions/{a}"), None).await;
    assert_eq!(st, StatusCode::NO_CONTENT);
    let (st, v) = call(&app, Method::GET, &format!("/sessions/{a}/state"), None).await;
    assert_eq!((st, v["error"].as_str()), (StatusCode::NOT_FOUND, Some("no_such_session")));
    let (st, v) = call(&app, Method::POST, "/sessions", Some(json!({ "libraries": ["nope"] }))).await;
    assert_eq!((st, v["error"].as_str()), (StatusCode::NOT_FOUND, Some("unknown_library")));
}

#[tokio::test]
async fn libraries_register_and_list() {
    let app = app();
    let (_, v) = call(&app, Method::GET, "/libraries", None).await;
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|l| l["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["logic", "tutorial"]);

    let lib = json!({ "name": "mine", "version": 1, "customs": [], "entries": [{ "utterance": "finish", "definition": "fs [ ]" }] });
    let (st, v) = call(&app, Method::POST, "/libraries/load", Some(json!({ "library": lib }))).await;
    assert_eq!(st, StatusCode::OK, "{v}");
    let (st, v) = call(&app, Method::POST, "/libraries/load", Some(json!({ "library": lib }))).await;
    assert_eq!((st, v["error"].as_str()), (StatusCode::CONFLICT, Some("duplicate_library")));
    let bad = json!({ "name": "bad", "version": 1, "customs": [], "entries": [{ "utterance": "x", "definition": "no such" }] });
    let (st, v) = call(&app, Method::POST, "/libraries/load", Some(json!({ "library": bad }))).await;
    assert_eq!((st, v["error"].as_str()), (StatusCode::UNPROCESSABLE_ENTITY, Some("replay_failure")));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("file.json");
    std::fs::write(&path, json!({ "name": "file", "version": 1, "customs": [], "entries": [] }).to_string()).unwrap();
    let (st, v) = call(&app, Method::POST, "/libraries/load", Some(json!({ "path": path }))).await;
    assert_eq!(st, StatusCode::OK, "{v}");

    let id = new_session(&app, &["mine"]).await;
    call(&app, Method::POST, &format!("/sessions/{id}/start"), Some(json!({ "goal": "n = n" }))).await;
    let (st, v) = call(&app, Method::POST, &format!("/sessions/{id}/step"), Some(json!({ "sentence": "finish." }))).await;
    assert_eq!(st, StatusCode::OK, "{v}");
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn requests_on_one_session_are_serialized() {
    let app = app();
    let id = new_session(&app, &[]).await;
    call(&app, Method::POST, &format!("/sessions/{id}/start"), Some(json!({ "goal": "p ==> p" }))).await;
    let steps = (0..16).map(|_| {
        let (app, id) = (app.clone(), id.clone());
        tokio::spawn(async move { call(&app, Method::POST, &format!("/sessions/{id}/step"), Some(json!({ "sentence": "all_tac" }))).await })
    });
    for h in steps {
        assert_eq!(h.await.unwrap().0, StatusCode::OK);
    }
    let (_, v) = call(&app, Method::GET, &format!("/sessions/{id}/state"), None).await;
    assert_eq!(v["transcript"].as_array().unwrap().len(), 16);
}

#[tokio::test]
async fn api_repl_and_direct_sessions_agree() {
    let libs = vec!["tutorial".to_string()];
    let sentences = ["introduce assumptions", "induction on 'n'", "simplify with [SUM_DEF]", "rewrite with [SUM_DEF]"];

    let (mut direct, _) = session_with(&libs).unwrap();
    direct.start_proof(GOAL).unwrap();
    for x in sentences {
        direct.run(x, Mode::Nltac).unwrap();
    }

    let (mut via_repl, _) = session_with(&libs).unwrap();
    let input = std::iter::once(format!(":start {GOAL}")).chain(sentences.iter().map(|x| x.to_string())).collect::<Vec<_>>().join("\n");
    let mut out = Vec::new();
    repl::run(&mut via_repl, input.as_bytes(), &mut out, false).unwrap();
    let out = String::from_utf8(out).unwrap();
    assert!(out.ends_with(&format!("{}\n", direct.tree().unwrap())), "{out}");

    let app = app();
    let id = new_session(&app, &["tutorial"]).await;
    call(&app, Method::POST, &format!("/sessions/{id}/start"), Some(json!({ "goal": GOAL }))).await;
    for x in sentences {
        let (st, v) = call(&app, Method::POST, &format!("/sessions/{id}/step"), Some(json!({ "sentence": x }))).await;
        assert_eq!(st, StatusCode::OK, "{v}");
    }
    let (_, v) = call(&app, Method::GET, &format!("/sessions/{id}/state"), None).await;
    let api: StateView = serde_json::from_value(v).unwrap();
    assert_eq!(api, state_view(&direct));
    assert_eq!(api, state_view(&via_repl));
}

#[test]
fn repl_commands() {
    let (mut s, _) = session_with(&[]).unwrap();
    let input = ":def \"finish\" = \"fs [ ]\"\n:start n + 0 = n\nfinish\n:qed add_zero\n:script\n:bogus\n:custom tactic MY_TAC\n:quit\nfinish\n";
    let mut out = Vec::new();
    repl::run(&mut s, input.as_bytes(), &mut out, false).unwrap();
    let out = String::from_utf8(out).unwrap();
    assert!(out.contains("1 rule(s) added"), "{out}");
    assert!(out.contains("No goals remain."), "{out}");
    assert!(out.contains("proved: n + 0 = n"), "{out}");
    assert!(out.contains("unknown command `:bogus`"), "{out}");
    assert!(out.contains("declared MY_TAC"), "{out}");
    assert!(s.store().contains("add_zero"));
    let fresh: Session = session_with(&[]).unwrap().0;
    assert!(!fresh.store().contains("add_zero"));
}
