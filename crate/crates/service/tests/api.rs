use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use wythoff_service::{router, ServiceConfig};

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(v) => {
            req = req.header("content-type", "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
    (status, value)
}

fn app() -> Router {
    router(ServiceConfig::default())
}

fn pos(x: u64, y: u64) -> Value {
    json!({ "x": x, "y": y })
}

async fn new_session(app: &Router, body: Value) -> Value {
    let (status, session) = call(app, "POST", "/sessions", Some(body)).await;
    assert_eq!(status, StatusCode::OK, "{session}");
    session
}

#[tokio::test]
async fn health() {
    let (status, body) = call(&app(), "GET", "/healthz", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, json!({ "status": "ok" }));
}

#[tokio::test]
async fn create_and_fetch() {
    let app = app();
    let s = new_session(&app, json!({ "k": 5, "start": pos(20, 17) })).await;
    assert_eq!(s["status"], "in-progress");
    assert_eq!(s["current"], pos(20, 17));
    assert_eq!(s["history"], json!([]));
    assert_eq!(s["bound"], 512);
    let id = s["id"].as_str().unwrap();
    let (status, fetched) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(fetched, s);
}

#[tokio::test]
async fn bad_starts() {
    let app = app();
    let (status, body) = call(&app, "POST", "/sessions", Some(json!({ "k": 5, "start": pos(2, 2) }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"], "terminal-start");
    let (status, _) = call(&app, "POST", "/sessions", Some(json!({ "k": 5, "bound": 10, "start": pos(11, 2) }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, body) = call(&app, "POST", "/sessions", Some(json!({ "k": -1, "start": pos(20, 17) }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"], "bad-request");
}

#[tokio::test]
async fn engine_first_takes_the_winning_move() {
    let app = app();
    // (13,7) has a single winning move, to (12,6).
    let s = new_session(&app, json!({ "k": 5, "start": pos(13, 7), "engine_first": true })).await;
    assert_eq!(s["history"], json!([{ "mover": "engine", "from": pos(13, 7), "to": pos(12, 6) }]));
    assert_eq!(s["current"], pos(12, 6));
    // From (12,7) the terminal cell (5,0) is reachable and wins outright.
    let s = new_session(&app, json!({ "k": 5, "start": pos(12, 7), "engine_first": true })).await;
    assert_eq!(s["current"], pos(5, 0));
    assert_eq!(s["status"], "engine-won");
}

#[tokio::test]
async fn human_moves() {
    let app = app();
    let s = new_session(&app, json!({ "k": 5, "start": pos(13, 6) })).await;
    let id = s["id"].as_str().unwrap().to_owned();
    let uri = format!("/sessions/{id}/move");

    let (status, body) = call(&app, "POST", &uri, Some(json!({ "to": pos(11, 5) }))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(body["error"], "illegal-move");
    assert_eq!(body["rule"], "not-a-queen-move");
    let (_, body) = call(&app, "POST", &uri, Some(json!({ "to": pos(14, 6) }))).await;
    assert_eq!(body["rule"], "coordinate-increased");
    let (_, body) = call(&app, "POST", &uri, Some(json!({ "to": pos(600, 6) }))).await;
    assert_eq!(body["rule"], "off-board");

    // Into a P-position: the engine must reply from it via the fallback.
    let (status, s) = call(&app, "POST", &uri, Some(json!({ "to": pos(12, 6), "version": 0 }))).await;
    assert_eq!(status, StatusCode::OK, "{s}");
    let history = s["history"].as_array().unwrap();
    assert_eq!(history.len(), 2);
    assert_eq!(history[0], json!({ "mover": "human", "from": pos(13, 6), "to": pos(12, 6) }));
    assert_eq!(history[1]["mover"], "engine");
    assert_eq!(history[1]["from"], pos(12, 6));
    assert_eq!(s["version"], 2);

    let (status, body) = call(&app, "POST", &uri, Some(json!({ "to": pos(0, 0), "version": 0 }))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(body["error"], "stale-version");
}

#[tokio::test]
async fn human_wins_by_entering_the_terminal_set() {
    let app = app();
    let s = new_session(&app, json!({ "k": 5, "start": pos(20, 3) })).await;
    let uri = format!("/sessions/{}/move", s["id"].as_str().unwrap());
    let (status, s) = call(&app, "POST", &uri, Some(json!({ "to": pos(2, 3) }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(s["status"], "human-won");
    assert_eq!(s["history"].as_array().unwrap().len(), 1);
    let (status, body) = call(&app, "POST", &uri, Some(json!({ "to": pos(1, 3) }))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(body["error"], "game-over");
}

#[tokio::test]
async fn hints() {
    let app = app();
    for (start, expected) in
        [((12, 6), json!([])), ((13, 7), json!([pos(12, 6)])), ((9, 8), json!([pos(1, 0), pos(2, 1), pos(3, 2)]))]
    {
        let s = new_session(&app, json!({ "k": 5, "start": pos(start.0, start.1) })).await;
        let (status, body) = call(&app, "GET", &format!("/sessions/{}/hints", s["id"].as_str().unwrap()), None).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(body["winning_moves"], expected, "from {start:?}");
    }
}

#[tokio::test]
async fn unknown_session() {
    let app = app();
    let (status, body) = call(&app, "GET", "/sessions/00000000-0000-0000-0000-000000000000", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["error"], "not-found");
    let (status, _) = call(&app, "POST", "/sessions/nope/move", Some(json!({ "to": pos(0, 0) }))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn classify() {
    let app = app();
    let (_, body) = call(&app, "GET", "/classify?k=5&x=12&y=6", None).await;
    assert_eq!(body, json!({ "class": "pair-P", "pair_index": 1 }));
    let (_, body) = call(&app, "GET", "/classify?k=5&x=0&y=0", None).await;
    assert_eq!(body, json!({ "class": "terminal-P" }));
    let (_, body) = call(&app, "GET", "/classify?k=5&x=13&y=6", None).await;
    assert_eq!(body, json!({ "class": "N" }));
    let (status, _) = call(&app, "GET", "/classify?k=5&x=-1&y=6", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn ppositions() {
    let app = app();
    let (status, body) = call(&app, "GET", "/ppositions?k=1&bound=4", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, json!([pos(0, 0), pos(0, 1), pos(1, 0), pos(2, 4), pos(4, 2)]));
    let (_, body) = call(&app, "GET", "/ppositions?k=5&bound=25", None).await;
    let list = body.as_array().unwrap();
    assert!(list.contains(&pos(12, 6)) && list.contains(&pos(6, 12)));
    assert_eq!(list.iter().filter(|p| p["x"].as_u64().unwrap() + p["y"].as_u64().unwrap() <= 5).count(), 21);
    let (status, _) = call(&app, "GET", "/ppositions?k=1&bound=0", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}
