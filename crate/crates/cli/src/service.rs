//! JSON-over-HTTP session service for the numbers-game playground.
//!
//! | method | path                   | body                      |
//! |--------|------------------------|---------------------------|
//! | POST   | `/session`             | graph file, or `{"preset"|"graph", "start"?, "asymmetric_k"?}` |
//! | GET    | `/session/{id}`        |                           |
//! | POST   | `/session/{id}/fire`   | `{"vertex": v}` (1-based) |
//! | POST   | `/session/{id}/undo`   |                           |
//! | POST   | `/session/{id}/reset`  |                           |
//! | GET    | `/presets`             |                           |
//!
//! Unknown sessions give 404, bad input 422, and firing on a graph without a
//! numbers game 409.

use std::collections::HashMap;
use std::net::{Ipv4Addr, SocketAddr};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use weighted_coxeter::presets::{preset, presets};
use weighted_coxeter::{Cyclotomic, WeightedGraph};

use crate::session::{Session, SessionError, SessionState};

#[derive(Default)]
pub struct AppState {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    next_id: AtomicU64,
}

#[derive(Serialize)]
struct SessionResponse<'a> {
    id: &'a str,
    state: SessionState,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateRequest {
    preset: Option<String>,
    graph: Option<String>,
    start: Option<Vec<Cyclotomic>>,
    #[serde(default)]
    asymmetric_k: bool,
}

#[derive(Deserialize)]
struct FireRequest {
    vertex: usize,
}

pub struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(serde_json::json!({ "error": self.1 }))).into_response()
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        match e {
            SessionError::Invalid(m) => ApiError(StatusCode::UNPROCESSABLE_ENTITY, m),
            SessionError::Unavailable(m) => ApiError(StatusCode::CONFLICT, m),
        }
    }
}

fn invalid(m: impl ToString) -> ApiError {
    ApiError(StatusCode::UNPROCESSABLE_ENTITY, m.to_string())
}

pub fn router() -> Router {
    router_with(Arc::new(AppState::default()))
}

pub fn router_with(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/presets", get(list_presets))
        .route("/session", post(create))
        .route("/session/{id}", get(show))
        .route("/session/{id}/fire", post(fire))
        .route("/session/{id}/undo", post(undo))
        .route("/session/{id}/reset", post(reset))
        .with_state(state)
}

/// Serves on localhost until the process is stopped.
pub async fn serve(port: u16) -> std::io::Result<()> {
    let addr = SocketAddr::from((Ipv4Addr::LOCALHOST, port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}

async fn list_presets() -> impl IntoResponse {
    Json(presets())
}

fn parse_create(body: &str) -> Result<(WeightedGraph, Option<Vec<Cyclotomic>>, bool), ApiError> {
    let request = serde_json::from_str::<serde_json::Value>(body)
        .ok()
        .filter(|v| v.get("preset").is_some() || v.get("graph").is_some());
    let Some(request) = request else {
        return Ok((WeightedGraph::parse(body).map_err(invalid)?, None, false));
    };
    let req: CreateRequest = serde_json::from_value(request).map_err(invalid)?;
    let (graph, preset_start) = match (req.preset, req.graph) {
        (Some(name), None) => {
            let p = preset(&name).ok_or_else(|| invalid(format!("unknown preset {name:?}")))?;
            (p.graph().map_err(invalid)?, p.start_position())
        }
        (None, Some(src)) => (WeightedGraph::parse(&src).map_err(invalid)?, None),
        _ => return Err(invalid("give exactly one of `preset` and `graph`")),
    };
    Ok((graph, req.start.or(preset_start), req.asymmetric_k))
}

fn respond(status: StatusCode, id: &str, session: &Session) -> Response {
    (
        status,
        Json(SessionResponse {
            id,
            state: session.state(),
        }),
    )
        .into_response()
}

async fn create(State(app): State<Arc<AppState>>, body: String) -> Result<Response, ApiError> {
    let (graph, start, asymmetric_k) = parse_create(&body)?;
    let session = Session::new(graph, start, asymmetric_k)?;
    let id = format!("s{}", app.next_id.fetch_add(1, Ordering::Relaxed) + 1);
    let response = respond(StatusCode::CREATED, &id, &session);
    app.sessions
        .write()
        .expect("session map lock")
        .insert(id, Arc::new(Mutex::new(session)));
    Ok(response)
}

fn lookup(app: &AppState, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
    app.sessions
        .read()
        .expect("session map lock")
        .get(id)
        .cloned()
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("unknown session {id:?}")))
}

/// Runs `f` under the session's lock and returns the resulting state.
fn mutate(
    app: &AppState,
    id: &str,
    f: impl FnOnce(&mut Session) -> Result<(), SessionError>,
) -> Result<Response, ApiError> {
    let session = lookup(app, id)?;
    let mut s = session.lock().expect("session lock");
    f(&mut s)?;
    Ok(respond(StatusCode::OK, id, &s))
}

async fn show(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    mutate(&app, &id, |_| Ok(()))
}

async fn fire(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: String,
) -> Result<Response, ApiError> {
    // Look the session up first so an unknown id is a 404 whatever the body.
    lookup(&app, &id)?;
    let req: FireRequest = serde_json::from_str(&body).map_err(invalid)?;
    mutate(&app, &id, |s| s.fire(req.vertex).map(|_| ()))
}

async fn undo(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    mutate(&app, &id, Session::undo)
}

async fn reset(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    mutate(&app, &id, |s| {
        s.reset();
        Ok(())
    })
}
