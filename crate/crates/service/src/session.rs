use std::time::Instant;

use serde::Serialize;
use uuid::Uuid;

use wythoff_core::engine::{engine_reply, Classifier};
use wythoff_core::{is_terminal, move_kind, MoveKind, Position, TerminalSpec};

use crate::error::{ApiError, MoveRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mover {
    Human,
    Engine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GameStatus {
    InProgress,
    HumanWon,
    EngineWon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Turn {
    pub mover: Mover,
    pub from: Position,
    pub to: Position,
}

/// One game. `version` equals the number of moves played and is bumped by
/// every accepted request, so clients can detect concurrent writers.
#[derive(Debug, Clone, Serialize)]
pub struct Session {
    pub id: Uuid,
    pub k: u64,
    pub bound: u64,
    pub current: Position,
    pub history: Vec<Turn>,
    pub status: GameStatus,
    pub version: u64,
    #[serde(skip)]
    pub(crate) touched: Instant,
}

/// Which rule `from -> to` breaks on a `0..=bound` board, if any.
pub fn illegal_rule(from: Position, to: Position, bound: u64) -> Option<MoveRule> {
    if !to.within(bound) {
        Some(MoveRule::OffBoard)
    } else if to.x > from.x || to.y > from.y {
        Some(MoveRule::CoordinateIncreased)
    } else if move_kind(from, to) == MoveKind::Illegal {
        Some(MoveRule::NotAQueenMove)
    } else {
        None
    }
}

impl Session {
    pub fn new(id: Uuid, k: u64, bound: u64, start: Position) -> Result<Self, ApiError> {
        if !start.within(bound) {
            return Err(ApiError::BadRequest(format!("start {start} is off the 0..={bound} board")));
        }
        if is_terminal(start, TerminalSpec::new(k)) {
            return Err(ApiError::TerminalStart(start));
        }
        Ok(Session {
            id,
            k,
            bound,
            current: start,
            history: Vec::new(),
            status: GameStatus::InProgress,
            version: 0,
            touched: Instant::now(),
        })
    }

    pub fn spec(&self) -> TerminalSpec {
        TerminalSpec::new(self.k)
    }

    fn play(&mut self, mover: Mover, to: Position) {
        self.history.push(Turn { mover, from: self.current, to });
        self.current = to;
        self.version += 1;
        if is_terminal(to, self.spec()) {
            self.status = match mover {
                Mover::Human => GameStatus::HumanWon,
                Mover::Engine => GameStatus::EngineWon,
            };
        }
    }

    /// The engine moves from the current position.
    pub fn engine_turn<C: Classifier>(&mut self, classifier: &C) -> Result<(), ApiError> {
        if self.status != GameStatus::InProgress {
            return Err(ApiError::GameOver);
        }
        let to = engine_reply(classifier, self.current, self.spec()).map_err(|e| ApiError::Internal(e.to_string()))?;
        self.play(Mover::Engine, to);
        Ok(())
    }

    /// Applies the human move and, unless it ended the game, the engine reply.
    pub fn human_turn<C: Classifier>(
        &mut self,
        to: Position,
        version: Option<u64>,
        classifier: &C,
    ) -> Result<(), ApiError> {
        if let Some(sent) = version.filter(|&v| v != self.version) {
            return Err(ApiError::StaleVersion { sent, current: self.version });
        }
        if self.status != GameStatus::InProgress {
            return Err(ApiError::GameOver);
        }
        if let Some(rule) = illegal_rule(self.current, to, self.bound) {
            return Err(ApiError::IllegalMove { from: self.current, to, rule });
        }
        self.play(Mover::Human, to);
        if self.status == GameStatus::InProgress {
            self.engine_turn(classifier)?;
        }
        Ok(())
    }
}
