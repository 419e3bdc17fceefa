use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;
use thiserror::Error;

use wythoff_core::Position;

/// Why a move was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveRule {
    NotAQueenMove,
    CoordinateIncreased,
    OffBoard,
}

impl MoveRule {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveRule::NotAQueenMove => "not-a-queen-move",
            MoveRule::CoordinateIncreased => "coordinate-increased",
            MoveRule::OffBoard => "off-board",
        }
    }
}

#[derive(Debug, Error)]
pub enum ApiError {
    #[error("{0}")]
    BadRequest(String),
    #[error("start {0} is terminal")]
    TerminalStart(Position),
    #[error("session not found")]
    NotFound,
    #[error("illegal move from {from} to {to}: {}", rule.as_str())]
    IllegalMove { from: Position, to: Position, rule: MoveRule },
    #[error("the game is over")]
    GameOver,
    #[error("stale version {sent}, session is at {current}")]
    StaleVersion { sent: u64, current: u64 },
    #[error("too many live sessions")]
    Capacity,
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Serialize)]
struct Body<'a> {
    error: &'a str,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    rule: Option<MoveRule>,
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match self {
            ApiError::BadRequest(_) | ApiError::TerminalStart(_) => StatusCode::BAD_REQUEST,
            ApiError::NotFound => StatusCode::NOT_FOUND,
            ApiError::IllegalMove { .. } | ApiError::GameOver | ApiError::StaleVersion { .. } => StatusCode::CONFLICT,
            ApiError::Capacity => StatusCode::SERVICE_UNAVAILABLE,
            ApiError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            ApiError::BadRequest(_) => "bad-request",
            ApiError::TerminalStart(_) => "terminal-start",
            ApiError::NotFound => "not-found",
            ApiError::IllegalMove { .. } => "illegal-move",
            ApiError::GameOver => "game-over",
            ApiError::StaleVersion { .. } => "stale-version",
            ApiError::Capacity => "capacity",
            ApiError::Internal(_) => "internal",
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let rule = match &self {
            ApiError::IllegalMove { rule, .. } => Some(*rule),
            _ => None,
        };
        let body = Body { error: self.code(), detail: self.to_string(), rule };
        (self.status(), Json(body)).into_response()
    }
}
