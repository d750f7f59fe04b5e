//! HTTP/JSON routes over the session store.

use std::sync::Arc;

use axum::extract::{Path as UrlPath, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sublink_core::link::TraceStep;
use sublink_core::proof::GoalId;
use sublink_core::{Action, ActionError, ItemRef, Path, Trace};
use uuid::Uuid;

use crate::session::{StatePayload, Store};

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", axum::routing::delete(remove))
        .route("/sessions/{id}/state", get(state))
        .route("/sessions/{id}/actions", post(act))
        .route("/sessions/{id}/candidates", get(candidates))
        .route("/sessions/{id}/trace", get(trace))
        .with_state(store)
}

/// An error response with a machine-readable reason.
#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    reason: String,
    kind: &'static str,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, reason: &str, kind: &'static str, message: String) -> ApiError {
        ApiError {
            status,
            reason: reason.to_string(),
            kind,
            message,
        }
    }

    fn unknown_session(id: &str) -> ApiError {
        ApiError::new(
            StatusCode::NOT_FOUND,
            "UnknownSession",
            "unknown_session",
            format!("no session {id}"),
        )
    }

    fn unprocessable(reason: &str, kind: &'static str, message: String) -> ApiError {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, reason, kind, message)
    }
}

impl From<ActionError> for ApiError {
    fn from(e: ActionError) -> ApiError {
        ApiError::unprocessable(&e.reason(), e.kind(), e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "reason": self.reason, "kind": self.kind, "message": self.message });
        (self.status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn session_id(raw: &str) -> ApiResult<Uuid> {
    raw.parse().map_err(|_| ApiError::unknown_session(raw))
}

async fn session(
    store: &Store,
    raw: &str,
) -> ApiResult<Arc<tokio::sync::Mutex<crate::session::Session>>> {
    let id = session_id(raw)?;
    store
        .get(id)
        .await
        .ok_or_else(|| ApiError::unknown_session(raw))
}

#[derive(Deserialize)]
struct CreateRequest {
    problem: String,
}

#[derive(Serialize)]
struct CreateResponse {
    session_id: Uuid,
    state: StatePayload,
}

async fn create(
    State(store): State<Arc<Store>>,
    Json(body): Json<Value>,
) -> ApiResult<(StatusCode, Json<CreateResponse>)> {
    let req: CreateRequest = serde_json::from_value(body).map_err(|e| {
        ApiError::unprocessable("MalformedRequest", "malformed_request", e.to_string())
    })?;
    let (session_id, state) = store
        .create(&req.problem)
        .await
        .map_err(|e| ApiError::unprocessable("ParseError", "parse", e.to_string()))?;
    tracing::info!(%session_id, "session created");
    Ok((StatusCode::CREATED, Json(CreateResponse { session_id, state })))
}

async fn state(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
) -> ApiResult<Json<StatePayload>> {
    let s = session(&store, &id).await?;
    let s = s.lock().await;
    Ok(Json(s.payload()))
}

#[derive(Serialize)]
struct ActionResponse {
    state: StatePayload,
    /// The linking and unit rules fired, for inspection.
    trace: Vec<TraceStep>,
}

async fn act(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
    Json(body): Json<Value>,
) -> ApiResult<Json<ActionResponse>> {
    let action: Action = serde_json::from_value(body).map_err(|e| {
        ApiError::unprocessable("MalformedAction", "malformed_action", e.to_string())
    })?;
    let s = session(&store, &id).await?;
    let mut s = s.lock().await;
    let trace = s.apply(&action).inspect_err(|e| {
        tracing::info!(session = %id, reason = %e.reason(), "action refused");
    })?;
    store.snapshot(&s);
    Ok(Json(ActionResponse {
        state: s.payload(),
        trace,
    }))
}

#[derive(Deserialize)]
struct CandidateQuery {
    /// Defaults to the first open goal.
    goal: Option<GoalId>,
    src_item: u64,
    #[serde(default)]
    src_path: String,
    dst_item: u64,
}

/// Accepts `0,1`, `[0,1]` or an empty string for the root.
pub fn parse_path(text: &str) -> Result<Path, String> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(Path::root());
    }
    inner
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad path step `{s}`"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Path)
}

async fn candidates(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
    Query(q): Query<CandidateQuery>,
) -> ApiResult<Json<Value>> {
    let path = parse_path(&q.src_path)
        .map_err(|e| ApiError::unprocessable("InvalidPath", "invalid_action", e))?;
    let s = session(&store, &id).await?;
    let s = s.lock().await;
    let goal = match q.goal {
        Some(g) => g,
        None => match s.state.goals().first() {
            Some(g) => g.id,
            None => return Ok(Json(json!([]))),
        },
    };
    let src = ItemRef {
        item: q.src_item,
        path,
    };
    let list = s.state.candidates(goal, &src, q.dst_item)?;
    Ok(Json(serde_json::to_value(list).expect("candidates serialize")))
}

async fn trace(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
) -> ApiResult<Json<Trace>> {
    let s = session(&store, &id).await?;
    let s = s.lock().await;
    Ok(Json(s.trace()))
}

async fn remove(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
) -> ApiResult<StatusCode> {
    let uuid = session_id(&id)?;
    if store.remove(uuid).await {
        tracing::info!(session = %id, "session deleted");
        Ok(StatusCode::NO_CONTENT)
    } else {
        Err(ApiError::unknown_session(&id))
    }
}
