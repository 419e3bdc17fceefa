//! Positions, the terminal predicate and queen-move generation.
//!
//! The board is the quarter plane `x, y >= 0`. A move takes the queen left
//! (horizontal), down (vertical) or diagonally towards the origin by any
//! positive number of cells. Under [`TerminalSpec`] `k` the game ends as soon
//! as the queen enters `{(x, y) : x + y <= k}`; `k = 0` is classical Wythoff.

use std::fmt;
use std::iter::FusedIterator;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A cell of the board: `x` stones in the first pile, `y` in the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub x: u64,
    pub y: u64,
}

impl Position {
    pub const ORIGIN: Position = Position { x: 0, y: 0 };

    #[inline]
    pub const fn new(x: u64, y: u64) -> Self {
        Position { x, y }
    }

    /// Exchanges the two coordinates. The rules are symmetric under this map.
    #[inline]
    pub const fn swap(self) -> Self {
        Position { x: self.y, y: self.x }
    }

    /// `x + y` without overflow.
    #[inline]
    pub fn sum(self) -> u128 {
        self.x as u128 + self.y as u128
    }

    #[inline]
    pub fn within(self, bound: u64) -> bool {
        self.x <= bound && self.y <= bound
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(u64, u64)> for Position {
    fn from((x, y): (u64, u64)) -> Self {
        Position { x, y }
    }
}

/// The threshold `k` of the terminal set `{(x, y) : x + y <= k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TerminalSpec {
    k: u64,
}

impl TerminalSpec {
    /// Classical Wythoff: only the origin is terminal.
    pub const CLASSICAL: TerminalSpec = TerminalSpec { k: 0 };

    #[inline]
    pub const fn new(k: u64) -> Self {
        TerminalSpec { k }
    }

    #[inline]
    pub const fn k(self) -> u64 {
        self.k
    }

    /// Number of terminal cells, `(k + 1)(k + 2) / 2`.
    pub fn terminal_count(self) -> u128 {
        let k = self.k as u128;
        (k + 1) * (k + 2) / 2
    }
}

impl fmt::Display for TerminalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}", self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("position {position} lies outside the board 0..={bound}")]
    OffBoard { position: Position, bound: u64 },
}

/// Returns true iff `p` lies in the terminal set of `spec`.
#[inline]
pub fn is_terminal(p: Position, spec: TerminalSpec) -> bool {
    p.sum() <= spec.k as u128
}

/// Relation of a target cell to a source cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    Horizontal,
    Vertical,
    Diagonal,
    Illegal,
}

/// Classifies `q` relative to `p` by queen geometry alone. Terminality of `p`
/// is not consulted.
pub fn move_kind(p: Position, q: Position) -> MoveKind {
    if q.y == p.y && q.x < p.x {
        MoveKind::Horizontal
    } else if q.x == p.x && q.y < p.y {
        MoveKind::Vertical
    } else if q.x < p.x && q.y < p.y && p.x - q.x == p.y - q.y {
        MoveKind::Diagonal
    } else {
        MoveKind::Illegal
    }
}

/// Lazy iterator over the legal moves of a position.
///
/// Order is fixed: horizontal targets by ascending `u`, then vertical targets
/// by ascending `v`, then diagonal targets by ascending step `t`.
#[derive(Debug, Clone)]
pub struct Moves {
    from: Position,
    stage: Stage,
    next: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stage {
    Horizontal,
    Vertical,
    Diagonal,
    Done,
}

impl Moves {
    fn empty(from: Position) -> Self {
        Moves { from, stage: Stage::Done, next: 0 }
    }
}

impl Iterator for Moves {
    type Item = Position;

    fn next(&mut self) -> Option<Position> {
        let Position { x, y } = self.from;
        loop {
            match self.stage {
                Stage::Horizontal => {
                    if self.next < x {
                        let u = self.next;
                        self.next += 1;
                        return Some(Position::new(u, y));
                    }
                    self.stage = Stage::Vertical;
                    self.next = 0;
                }
                Stage::Vertical => {
                    if self.next < y {
                        let v = self.next;
                        self.next += 1;
                        return Some(Position::new(x, v));
                    }
                    self.stage = Stage::Diagonal;
                    self.next = 1;
                }
                Stage::Diagonal => {
                    if self.next <= x.min(y) {
                        let t = self.next;
                        self.next += 1;
                        return Some(Position::new(x - t, y - t));
                    }
                    self.stage = Stage::Done;
                }
                Stage::Done => return None,
            }
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let Position { x, y } = self.from;
        let left = match self.stage {
            Stage::Horizontal => (x - self.next) as u128 + y as u128 + x.min(y) as u128,
            Stage::Vertical => (y - self.next) as u128 + x.min(y) as u128,
            Stage::Diagonal => (x.min(y) + 1).saturating_sub(self.next) as u128,
            Stage::Done => 0,
        };
        match usize::try_from(left) {
            Ok(n) => (n, Some(n)),
            Err(_) => (usize::MAX, None),
        }
    }
}

impl FusedIterator for Moves {}

/// All positions reachable in one move from `p`; empty when `p` is terminal.
///
/// The iterator is lazy, so this never allocates; callers that collect must
/// keep coordinates desk-sized (see [`moves_bounded`]).
pub fn moves(p: Position, spec: TerminalSpec) -> Moves {
    if is_terminal(p, spec) {
        Moves::empty(p)
    } else {
        Moves { from: p, stage: Stage::Horizontal, next: 0 }
    }
}

/// Collects [`moves`] after checking that `p` lies on the board `0..=bound`.
/// Every move target of an on-board position is on-board as well.
pub fn moves_bounded(p: Position, spec: TerminalSpec, bound: u64) -> Result<Vec<Position>, GameError> {
    if !p.within(bound) {
        return Err(GameError::OffBoard { position: p, bound });
    }
    Ok(moves(p, spec).collect())
}

/// Number of moves available from a non-terminal position: `x + y + min(x, y)`.
pub fn move_count(p: Position, spec: TerminalSpec) -> u128 {
    if is_terminal(p, spec) {
        0
    } else {
        p.x as u128 + p.y as u128 + p.x.min(p.y) as u128
    }
}
