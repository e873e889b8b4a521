//! HTTP API over a [`ProblemStore`].
//!
//! | method | path | |
//! |---|---|---|
//! | POST | `/api/problems` | create, `201 {id, revision}` |
//! | GET | `/api/problems` | list `[{id, title, revision}]` |
//! | GET | `/api/problems/{id}` | the stored document, `ETag` = revision |
//! | PUT | `/api/problems/{id}` | replace; honours `If-Match` |
//! | DELETE | `/api/problems/{id}` | `204` |
//! | GET | `/api/problems/{id}/evaluate?iMin=&iMax=&k=` | evaluation result |
//! | GET | `/api/problems/{id}/sensitivity?iMin=&iMax=` | winner as a function of k |
//!
//! Errors are JSON `{"error": "...", "diagnostics": [...]}`. Evaluation is
//! recomputed per request from an immutable snapshot of the stored document.

mod store;

use std::collections::HashMap;
use std::io;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use serde_json::json;
use tower_http::cors::CorsLayer;
use tower_http::services::ServeDir;

pub use store::{ProblemStore, StoreError, StoredProblem};

use crate::document::{parse_problem, serialize_problem};
use crate::engine::{evaluate, EvaluationConfig};
use crate::report::{evaluation_json, sensitivity_json};
use crate::sensitivity::k_sensitivity;

pub const DEFAULT_PORT: u16 = 8787;

type Shared = Arc<ProblemStore>;

struct ApiError {
    status: StatusCode,
    message: String,
    diagnostics: Vec<String>,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError { status, message: message.into(), diagnostics: Vec::new() }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }

    fn not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, format!("problem {id:?} not found"))
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        let status = match e {
            StoreError::NotFound(_) => StatusCode::NOT_FOUND,
            StoreError::Conflict { .. } => StatusCode::CONFLICT,
            StoreError::Io { .. } => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError::new(status, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": self.message, "diagnostics": self.diagnostics });
        (self.status, json_body(format!("{body}\n"))).into_response()
    }
}

fn json_body(text: String) -> ([(header::HeaderName, HeaderValue); 1], String) {
    ([(header::CONTENT_TYPE, HeaderValue::from_static("application/json"))], text)
}

fn parse_body(body: &str) -> Result<crate::document::ProblemDocument, ApiError> {
    if body.trim().is_empty() {
        return Err(ApiError {
            status: StatusCode::BAD_REQUEST,
            message: "empty request body".into(),
            diagnostics: vec!["request body must be a problem document".into()],
        });
    }
    parse_problem(body).map(|p| p.document).map_err(|e| ApiError {
        status: StatusCode::BAD_REQUEST,
        message: e.to_string(),
        diagnostics: e.diagnostics(),
    })
}

/// Parses an `If-Match` value such as `3`, `"3"` or `W/"3"`; `*` matches anything.
fn if_match(headers: &HeaderMap) -> Result<Option<u64>, ApiError> {
    let Some(raw) = headers.get(header::IF_MATCH) else {
        return Ok(None);
    };
    let text = raw.to_str().map_err(|_| ApiError::bad_request("malformed If-Match header"))?.trim();
    if text == "*" {
        return Ok(None);
    }
    text.trim_start_matches("W/")
        .trim_matches('"')
        .parse()
        .map(Some)
        .map_err(|_| ApiError::bad_request(format!("malformed If-Match header {text:?}")))
}

fn etag(revision: u64) -> HeaderValue {
    HeaderValue::from_str(&format!("\"{revision}\"")).expect("valid header")
}

async fn create_problem(State(store): State<Shared>, body: String) -> Result<Response, ApiError> {
    let doc = parse_body(&body)?;
    let (id, revision) = store.create(doc)?;
    let location = HeaderValue::from_str(&format!("/api/problems/{id}")).expect("valid header");
    let body = json!({ "id": id, "revision": revision });
    Ok((
        StatusCode::CREATED,
        [(header::LOCATION, location), (header::ETAG, etag(revision))],
        json_body(format!("{body}\n")),
    )
        .into_response())
}

async fn list_problems(State(store): State<Shared>) -> Response {
    let items: Vec<_> = store
        .list()
        .into_iter()
        .map(|(id, p)| json!({ "id": id, "title": p.document.title, "revision": p.revision }))
        .collect();
    json_body(format!("{}\n", serde_json::Value::Array(items))).into_response()
}

async fn get_problem(State(store): State<Shared>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let p = store.get(&id).ok_or_else(|| ApiError::not_found(&id))?;
    Ok(([(header::ETAG, etag(p.revision))], json_body(serialize_problem(&p.document))).into_response())
}

async fn update_problem(
    State(store): State<Shared>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: String,
) -> Result<Response, ApiError> {
    let expected = if_match(&headers)?;
    if store.get(&id).is_none() {
        return Err(ApiError::not_found(&id));
    }
    let doc = parse_body(&body)?;
    let revision = store.update(&id, doc, expected)?;
    let body = json!({ "id": id, "revision": revision });
    Ok(([(header::ETAG, etag(revision))], json_body(format!("{body}\n"))).into_response())
}

async fn delete_problem(State(store): State<Shared>, Path(id): Path<String>) -> Result<StatusCode, ApiError> {
    store.delete(&id)?;
    Ok(StatusCode::NO_CONTENT)
}

fn query_number(q: &HashMap<String, String>, key: &str) -> Result<Option<f64>, ApiError> {
    match q.get(key).map(|s| s.trim()) {
        None | Some("") => Ok(None),
        Some(s) => match s.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Some(x)),
            _ => Err(ApiError::bad_request(format!("query parameter {key}={s:?} is not a finite number"))),
        },
    }
}

fn query_config(
    q: &HashMap<String, String>,
    defaults: Option<EvaluationConfig>,
) -> Result<EvaluationConfig, ApiError> {
    let base = defaults.unwrap_or_default();
    let cfg = EvaluationConfig {
        i_min: query_number(q, "iMin")?.unwrap_or(base.i_min),
        i_max: query_number(q, "iMax")?.unwrap_or(base.i_max),
        k: query_number(q, "k")?.unwrap_or(base.k),
    };
    cfg.check().map_err(|e| ApiError::bad_request(e.to_string()))?;
    Ok(cfg)
}

async fn evaluate_problem(
    State(store): State<Shared>,
    Path(id): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> Result<Response, ApiError> {
    let p = store.get(&id).ok_or_else(|| ApiError::not_found(&id))?;
    let cfg = query_config(&q, p.document.defaults)?;
    let problem = &p.document.problem;
    let result = evaluate(problem, &cfg).map_err(|e| ApiError::bad_request(e.to_string()))?;
    Ok(json_body(evaluation_json(problem, &cfg, &result)).into_response())
}

async fn problem_sensitivity(
    State(store): State<Shared>,
    Path(id): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> Result<Response, ApiError> {
    let p = store.get(&id).ok_or_else(|| ApiError::not_found(&id))?;
    let cfg = query_config(&q, p.document.defaults)?;
    let problem = &p.document.problem;
    let s = k_sensitivity(problem, cfg.i_min, cfg.i_max).map_err(|e| ApiError::bad_request(e.to_string()))?;
    Ok(json_body(sensitivity_json(problem, &s)).into_response())
}

async fn index() -> &'static str {
    "ndmm decision service\nAPI: /api/problems\n"
}

/// Routes for the API, with CORS enabled. Static UI assets are served from
/// `static_dir` at `/` when given.
pub fn router(store: Arc<ProblemStore>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/problems", get(list_problems).post(create_problem))
        .route("/api/problems/{id}", get(get_problem).put(update_problem).delete(delete_problem))
        .route("/api/problems/{id}/evaluate", get(evaluate_problem))
        .route("/api/problems/{id}/sensitivity", get(problem_sensitivity))
        .with_state(store);
    let app = match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(index)),
    };
    app.layer(CorsLayer::permissive())
}

#[derive(Debug, Clone)]
pub struct ServeConfig {
    pub host: String,
    /// `0` binds an ephemeral port.
    pub port: u16,
    pub data_dir: Option<PathBuf>,
    pub static_dir: Option<PathBuf>,
}

impl Default for ServeConfig {
    fn default() -> Self {
        ServeConfig { host: "127.0.0.1".into(), port: DEFAULT_PORT, data_dir: None, static_dir: None }
    }
}

/// A bound, not yet running server.
pub struct Server {
    listener: tokio::net::TcpListener,
    app: Router,
    /// Files in the data directory that could not be loaded.
    pub skipped: Vec<String>,
}

impl Server {
    pub async fn bind(cfg: &ServeConfig) -> io::Result<Self> {
        let (store, skipped) = match &cfg.data_dir {
            Some(dir) => ProblemStore::open(dir)
                .map_err(|e| io::Error::new(e.kind(), format!("data directory {}: {e}", dir.display())))?,
            None => (ProblemStore::in_memory(), Vec::new()),
        };
        let listener = tokio::net::TcpListener::bind((cfg.host.as_str(), cfg.port)).await?;
        let app = router(Arc::new(store), cfg.static_dir.clone());
        Ok(Server { listener, app, skipped })
    }

    pub fn local_addr(&self) -> io::Result<SocketAddr> {
        self.listener.local_addr()
    }

    /// Serves until `shutdown` resolves.
    pub async fn run_until(
        self,
        shutdown: impl std::future::Future<Output = ()> + Send + 'static,
    ) -> io::Result<()> {
        axum::serve(self.listener, self.app).with_graceful_shutdown(shutdown).await
    }
}

/// Resolves on Ctrl-C or, on Unix, SIGTERM.
pub async fn shutdown_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let term = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut s) => {
                s.recv().await;
            }
            Err(_) => std::future::pending::<()>().await,
        }
    };
    #[cfg(not(unix))]
    let term = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {},
        _ = term => {},
    }
}
