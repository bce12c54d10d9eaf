//! HTTP+JSON session service.
//!
//! Sessions live in memory under opaque ids. Each session sits behind its
//! own mutex and every operation runs on the blocking pool while holding
//! it, so operations on one id are serialized while different ids proceed
//! concurrently. Error bodies are `{error, diagnostic}` with `error` the
//! session error's wire name.

use std::collections::HashMap;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, PoisonError, RwLock};
use std::time::SystemTime;

use axum::extract::{Path as UrlPath, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use tactica::kernel::TheoremStore;
use tactica::library::{CustomKind, Library, LibraryError, LibraryStore, LoadReport};
use tactica::session::{join_fragments, Mode, Session, SessionError};

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    error: &'static str,
    diagnostic: String,
}

impl ApiError {
    fn new(status: StatusCode, error: &'static str, diagnostic: impl Into<String>) -> ApiError {
        ApiError { status, error, diagnostic: diagnostic.into() }
    }

    fn no_session(id: &str) -> ApiError {
        ApiError::new(StatusCode::NOT_FOUND, "no_such_session", format!("no session `{id}`"))
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> ApiError {
        let status = match e {
            SessionError::SessionBusy | SessionError::Def(_) | SessionError::Custom(_) => StatusCode::CONFLICT,
            SessionError::NoProof | SessionError::NothingToUndo => StatusCode::CONFLICT,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        let diagnostic = match &e {
            SessionError::NotUnderstood { diagnostic, .. } => diagnostic.clone(),
            other => other.to_string(),
        };
        ApiError::new(status, e.kind(), diagnostic)
    }
}

impl From<LibraryError> for ApiError {
    fn from(e: LibraryError) -> ApiError {
        let status = match e {
            LibraryError::DuplicateLibrary(_) => StatusCode::CONFLICT,
            LibraryError::FileNotFound(_) => StatusCode::NOT_FOUND,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError::new(status, e.kind(), e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.error, "diagnostic": self.diagnostic }))).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

struct ApiSession {
    session: Mutex<Session>,
    created: SystemTime,
}

pub struct AppState {
    store: TheoremStore,
    libraries: RwLock<LibraryStore>,
    /// Libraries replayed into every new session before requested ones.
    base: Vec<String>,
    sessions: RwLock<HashMap<String, Arc<ApiSession>>>,
    next_id: AtomicU64,
}

impl AppState {
    /// Bundled libraries plus `libs`, each a registered name or a file
    /// path; file libraries are registered and become part of every
    /// session's base language.
    pub fn new(libs: &[String]) -> Result<AppState, LibraryError> {
        let store = TheoremStore::bundled();
        let mut libraries = LibraryStore::bundled(&store);
        let mut base = Vec::new();
        for item in libs {
            if libraries.get(item).is_some() {
                base.push(item.clone());
            } else {
                let lib = Library::read(Path::new(item))?;
                base.push(lib.name.clone());
                libraries.register(lib, &store)?;
            }
        }
        Ok(AppState { store, libraries: RwLock::new(libraries), base, sessions: RwLock::default(), next_id: AtomicU64::new(1) })
    }

    fn session(&self, id: &str) -> Result<Arc<ApiSession>, ApiError> {
        read(&self.sessions).get(id).cloned().ok_or_else(|| ApiError::no_session(id))
    }

    fn new_session(&self, requested: &[String]) -> Result<(Session, LoadReport), ApiError> {
        let libs = read(&self.libraries);
        let names: Vec<&str> = self.base.iter().chain(requested).map(String::as_str).collect();
        if let Some(missing) = names.iter().find(|n| libs.get(n).is_none()) {
            return Err(ApiError::new(StatusCode::NOT_FOUND, "unknown_library", format!("no library named `{missing}`")));
        }
        let mut s = Session::new(self.store.clone());
        let report = libs.load(&mut s, &names)?;
        Ok((s, report))
    }
}

fn read<T>(l: &RwLock<T>) -> std::sync::RwLockReadGuard<'_, T> {
    l.read().unwrap_or_else(PoisonError::into_inner)
}

fn write<T>(l: &RwLock<T>) -> std::sync::RwLockWriteGuard<'_, T> {
    l.write().unwrap_or_else(PoisonError::into_inner)
}

/// Runs `f` on session `id` under its lock, off the async workers.
async fn with_session<T, F>(st: &Arc<AppState>, id: &str, f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce(&mut Session) -> Result<T, ApiError> + Send + 'static,
{
    let entry = st.session(id)?;
    tokio::task::spawn_blocking(move || f(&mut entry.session.lock().unwrap_or_else(PoisonError::into_inner)))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalView {
    pub assumptions: Vec<String>,
    pub conclusion: String,
    pub focused: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateView {
    pub goals: Vec<GoalView>,
    pub closed: bool,
    pub transcript: Vec<String>,
}

pub fn state_view(s: &Session) -> StateView {
    let goals = s
        .tree()
        .map(|t| {
            t.leaves()
                .iter()
                .enumerate()
                .map(|(i, g)| GoalView {
                    assumptions: g.asms.iter().map(|a| a.to_string()).collect(),
                    conclusion: g.concl.to_string(),
                    focused: i == t.focus(),
                })
                .collect()
        })
        .unwrap_or_default();
    StateView { goals, closed: s.tree().is_some_and(|t| t.is_closed()), transcript: s.transcript().to_vec() }
}

#[derive(Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct CreateReq {
    libraries: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StartReq {
    goal: String,
}

#[derive(Deserialize, Default, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum ModeName {
    #[default]
    Nltac,
    Nlexplain,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StepReq {
    sentence: String,
    #[serde(default)]
    mode: ModeName,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DefReq {
    utterance: String,
    definition: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomReq {
    name: String,
    kind: CustomKind,
}

#[derive(Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct QedReq {
    name: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LoadReq {
    Inline { library: Library },
    File { path: String },
}

#[derive(Deserialize)]
struct GrammarQuery {
    session: Option<String>,
}

async fn create(State(st): State<Arc<AppState>>, body: Option<Json<CreateReq>>) -> ApiResult<Value> {
    let req = body.map(|b| b.0).unwrap_or_default();
    let worker = st.clone();
    let (session, report) = tokio::task::spawn_blocking(move || worker.new_session(&req.libraries))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))??;
    let id = format!("s{}", st.next_id.fetch_add(1, Ordering::Relaxed));
    let entry = Arc::new(ApiSession { session: Mutex::new(session), created: SystemTime::now() });
    write(&st.sessions).insert(id.clone(), entry);
    Ok(Json(json!({ "id": id, "report": report })))
}

async fn list(State(st): State<Arc<AppState>>) -> Json<Vec<Value>> {
    let since = |t: SystemTime| t.duration_since(SystemTime::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let mut out: Vec<Value> = read(&st.sessions).iter().map(|(id, e)| json!({ "id": id, "created": since(e.created) })).collect();
    out.sort_by(|a, b| a["id"].as_str().cmp(&b["id"].as_str()));
    Json(out)
}

async fn delete(State(st): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> Result<StatusCode, ApiError> {
    write(&st.sessions).remove(&id).map(|_| StatusCode::NO_CONTENT).ok_or_else(|| ApiError::no_session(&id))
}

async fn start(State(st): State<Arc<AppState>>, UrlPath(id): UrlPath<String>, Json(req): Json<StartReq>) -> ApiResult<StateView> {
    with_session(&st, &id, move |s| {
        if s.tree().is_some() {
            s.abandon();
        }
        s.start_proof(&req.goal)?;
        Ok(Json(state_view(s)))
    })
    .await
}

async fn step(State(st): State<Arc<AppState>>, UrlPath(id): UrlPath<String>, Json(req): Json<StepReq>) -> ApiResult<Value> {
    with_session(&st, &id, move |s| {
        let mode = match req.mode {
            ModeName::Nltac => Mode::Nltac,
            ModeName::Nlexplain => Mode::Nlexplain,
        };
        let explained = s.run(&req.sentence, mode)?;
        let fragments: Vec<String> = explained.into_iter().map(|x| x.fragment).collect();
        let fragment = (!fragments.is_empty()).then(|| join_fragments(&fragments));
        let view = state_view(s);
        Ok(Json(json!({ "ok": true, "goals": view.goals, "closed": view.closed, "fragment": fragment, "fragments": fragments })))
    })
    .await
}

async fn undo(State(st): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> ApiResult<StateView> {
    with_session(&st, &id, |s| {
        s.undo()?;
        Ok(Json(state_view(s)))
    })
    .await
}

async fn def(State(st): State<Arc<AppState>>, UrlPath(id): UrlPath<String>, Json(req): Json<DefReq>) -> ApiResult<Value> {
    with_session(&st, &id, move |s| {
        let r = s.def(&req.utterance, &req.definition)?;
        let rules: Vec<String> = r.rules.iter().map(|r| r.to_string()).collect();
        Ok(Json(json!({ "rulesAdded": r.rules_added(), "rules": rules, "value": r.value.render() })))
    })
    .await
}

async fn custom(State(st): State<Arc<AppState>>, UrlPath(id): UrlPath<String>, Json(req): Json<CustomReq>) -> ApiResult<Value> {
    with_session(&st, &id, move |s| {
        s.add_custom(&req.name, req.kind.tactic_type(), None)?;
        Ok(Json(json!({ "ok": true, "name": req.name, "kind": req.kind })))
    })
    .await
}

async fn qed(State(st): State<Arc<AppState>>, UrlPath(id): UrlPath<String>, body: Option<Json<QedReq>>) -> ApiResult<Value> {
    let req = body.map(|b| b.0).unwrap_or_default();
    with_session(&st, &id, move |s| {
        let th = s.qed(req.name.as_deref())?;
        Ok(Json(json!({ "theorem": th.concl().to_string(), "name": req.name })))
    })
    .await
}

async fn state(State(st): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> ApiResult<StateView> {
    with_session(&st, &id, |s| Ok(Json(state_view(s)))).await
}

async fn script(State(st): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> ApiResult<Value> {
    with_session(&st, &id, |s| Ok(Json(json!({ "script": s.export_script() })))).await
}

async fn grammar(State(st): State<Arc<AppState>>, Query(q): Query<GrammarQuery>) -> ApiResult<Value> {
    let dump = match q.session {
        Some(id) => with_session(&st, &id, |s| Ok(s.grammar().dump())).await?,
        None => {
            let worker = st.clone();
            tokio::task::spawn_blocking(move || worker.new_session(&[]).map(|(s, _)| s.grammar().dump()))
                .await
                .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))??
        }
    };
    Ok(Json(json!({ "rules": dump.lines().count(), "dump": dump })))
}

async fn load_library(State(st): State<Arc<AppState>>, Json(req): Json<LoadReq>) -> ApiResult<Value> {
    let worker = st.clone();
    tokio::task::spawn_blocking(move || {
        let lib = match req {
            LoadReq::Inline { library } => Library::from_json(&serde_json::to_string(&library).expect("serializable"))?,
            LoadReq::File { path } => Library::read(Path::new(&path))?,
        };
        let lib = write(&worker.libraries).register(lib, &worker.store)?;
        Ok(Json(json!({ "name": lib.name, "customs": lib.customs.len(), "entries": lib.entries.len() })))
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
}

async fn libraries(State(st): State<Arc<AppState>>) -> Json<Vec<Library>> {
    Json(read(&st.libraries).iter().map(|l| (**l).clone()).collect())
}

pub fn router(app: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create).get(list))
        .route("/sessions/{id}", axum::routing::delete(delete))
        .route("/sessions/{id}/start", post(start))
        .route("/sessions/{id}/step", post(step))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/def", post(def))
        .route("/sessions/{id}/custom", post(custom))
        .route("/sessions/{id}/qed", post(qed))
        .route("/sessions/{id}/state", get(state))
        .route("/sessions/{id}/script", get(script))
        .route("/grammar", get(grammar))
        .route("/libraries", get(libraries))
        .route("/libraries/load", post(load_library))
        .with_state(app)
}

/// Serves until ctrl-c.
pub async fn serve(port: u16, state: Arc<AppState>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
