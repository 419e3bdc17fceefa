//! JSON-over-HTTP play service.
//!
//! | route | purpose |
//! |---|---|
//! | `GET /healthz` | liveness |
//! | `POST /sessions` | new game `{k?, bound?, start, engine_first?}` |
//! | `GET /sessions/{id}` | current state |
//! | `POST /sessions/{id}/move` | human move `{to, version?}`, answered by the engine |
//! | `GET /sessions/{id}/hints` | every winning move from the current cell |
//! | `GET /classify?k&x&y` | `terminal-P`, `pair-P` (with index) or `N` |
//! | `GET /ppositions?k&bound` | `P_k` on the board, sorted |
//!
//! Errors are `{"error": code, "detail": text}` with 400, 404 or 409.

mod error;
mod session;

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use uuid::Uuid;

use wythoff_core::engine::winning_moves;
use wythoff_core::sequences::StreamCache;
use wythoff_core::{Position, PositionClass};

pub use error::{ApiError, MoveRule};
pub use session::{illegal_rule, GameStatus, Mover, Session, Turn};

pub const DEFAULT_BOUND: u64 = 512;
pub const MAX_BOUND: u64 = 1024;
pub const MAX_K: u64 = 1 << 20;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// `k` for sessions that do not name one.
    pub default_k: u64,
    pub default_bound: u64,
    pub session_ttl: Duration,
    pub max_sessions: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            default_k: 5,
            default_bound: DEFAULT_BOUND,
            session_ttl: Duration::from_secs(6 * 3600),
            max_sessions: 10_000,
        }
    }
}

type SessionSlot = Arc<Mutex<Session>>;

#[derive(Default)]
struct AppState {
    config: ServiceConfig,
    sessions: Mutex<HashMap<Uuid, SessionSlot>>,
    streams: StreamCache,
}

type Shared = Arc<AppState>;
type ApiResult<T> = Result<Json<T>, ApiError>;

pub fn router(config: ServiceConfig) -> Router {
    let state = Arc::new(AppState { config, ..AppState::default() });
    Router::new()
        .route("/healthz", get(healthz))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/move", post(make_move))
        .route("/sessions/{id}/hints", get(hints))
        .route("/classify", get(classify))
        .route("/ppositions", get(ppositions))
        .with_state(state)
}

/// Serves until ctrl-c.
pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(config))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

fn check_k(k: u64) -> Result<u64, ApiError> {
    if k > MAX_K {
        return Err(ApiError::BadRequest(format!("k must be at most {MAX_K}")));
    }
    Ok(k)
}

fn check_bound(bound: u64) -> Result<u64, ApiError> {
    if !(1..=MAX_BOUND).contains(&bound) {
        return Err(ApiError::BadRequest(format!("bound must be in 1..={MAX_BOUND}")));
    }
    Ok(bound)
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    payload.map(|Json(v)| v).map_err(|e| ApiError::BadRequest(e.body_text()))
}

fn query<T>(params: Result<Query<T>, QueryRejection>) -> Result<T, ApiError> {
    params.map(|Query(v)| v).map_err(|e| ApiError::BadRequest(e.body_text()))
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError::Internal(e.to_string()))?
}

#[derive(Serialize)]
struct Health {
    status: &'static str,
}

async fn healthz() -> Json<Health> {
    Json(Health { status: "ok" })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NewSession {
    k: Option<u64>,
    bound: Option<u64>,
    start: Position,
    #[serde(default)]
    engine_first: bool,
}

async fn create_session(
    State(app): State<Shared>,
    payload: Result<Json<NewSession>, JsonRejection>,
) -> ApiResult<Session> {
    let req = body(payload)?;
    let k = check_k(req.k.unwrap_or(app.config.default_k))?;
    let bound = check_bound(req.bound.unwrap_or(app.config.default_bound))?;
    let mut session = Session::new(Uuid::new_v4(), k, bound, req.start)?;
    let session = blocking({
        let app = app.clone();
        move || {
            if req.engine_first {
                let stream = app.streams.get(k);
                session.engine_turn(&*stream.covering(bound))?;
            }
            Ok(session)
        }
    })
    .await?;

    let mut sessions = app.sessions.lock().unwrap_or_else(|e| e.into_inner());
    let ttl = app.config.session_ttl;
    sessions.retain(|_, slot| slot.lock().map(|s| s.touched.elapsed() < ttl).unwrap_or(false));
    if sessions.len() >= app.config.max_sessions {
        return Err(ApiError::Capacity);
    }
    sessions.insert(session.id, Arc::new(Mutex::new(session.clone())));
    Ok(Json(session))
}

fn slot(app: &AppState, id: &str) -> Result<SessionSlot, ApiError> {
    let id = Uuid::parse_str(id).map_err(|_| ApiError::NotFound)?;
    let sessions = app.sessions.lock().unwrap_or_else(|e| e.into_inner());
    sessions.get(&id).cloned().ok_or(ApiError::NotFound)
}

async fn get_session(State(app): State<Shared>, Path(id): Path<String>) -> ApiResult<Session> {
    let slot = slot(&app, &id)?;
    let session = slot.lock().unwrap_or_else(|e| e.into_inner()).clone();
    Ok(Json(session))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveRequest {
    to: Position,
    version: Option<u64>,
}

async fn make_move(
    State(app): State<Shared>,
    Path(id): Path<String>,
    payload: Result<Json<MoveRequest>, JsonRejection>,
) -> ApiResult<Session> {
    let slot = slot(&app, &id)?;
    let req = body(payload)?;
    let session = blocking(move || {
        let mut session = slot.lock().unwrap_or_else(|e| e.into_inner());
        let stream = app.streams.get(session.k);
        let classifier = stream.covering(session.bound);
        session.human_turn(req.to, req.version, &*classifier)?;
        session.touched = std::time::Instant::now();
        Ok(session.clone())
    })
    .await?;
    Ok(Json(session))
}

#[derive(Serialize)]
struct Hints {
    from: Position,
    winning_moves: Vec<Position>,
}

async fn hints(State(app): State<Shared>, Path(id): Path<String>) -> ApiResult<Hints> {
    let slot = slot(&app, &id)?;
    let hints = blocking(move || {
        let session = slot.lock().unwrap_or_else(|e| e.into_inner()).clone();
        let stream = app.streams.get(session.k);
        let classifier = stream.covering(session.bound);
        Ok(Hints { from: session.current, winning_moves: winning_moves(&*classifier, session.current, session.spec()) })
    })
    .await?;
    Ok(Json(hints))
}

#[derive(Deserialize)]
struct ClassifyQuery {
    k: u64,
    x: u64,
    y: u64,
}

#[derive(Serialize)]
struct Classification {
    class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair_index: Option<u64>,
}

async fn classify(
    State(app): State<Shared>,
    params: Result<Query<ClassifyQuery>, QueryRejection>,
) -> ApiResult<Classification> {
    let q = query(params)?;
    let k = check_k(q.k)?;
    let class: PositionClass = blocking(move || Ok(app.streams.get(k).classify(Position::new(q.x, q.y)))).await?;
    Ok(Json(Classification { class: class.as_str(), pair_index: class.pair_index() }))
}

#[derive(Deserialize)]
struct PPositionsQuery {
    k: u64,
    bound: u64,
}

async fn ppositions(
    State(app): State<Shared>,
    params: Result<Query<PPositionsQuery>, QueryRejection>,
) -> ApiResult<Vec<Position>> {
    let q = query(params)?;
    let (k, bound) = (check_k(q.k)?, check_bound(q.bound)?);
    let list = blocking(move || {
        let stream = app.streams.get(k);
        let guard = stream.covering(bound);
        let mut out = Vec::new();
        for x in 0..=bound.min(k) {
            out.extend((0..=(k - x).min(bound)).map(|y| Position::new(x, y)));
        }
        for (&a, &b) in guard.a_values().iter().zip(guard.b_values()).take_while(|(&a, _)| a <= bound) {
            if b <= bound {
                out.push(Position::new(a, b));
                out.push(Position::new(b, a));
            }
        }
        out.sort_unstable();
        Ok(out)
    })
    .await?;
    Ok(Json(list))
}
