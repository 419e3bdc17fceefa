//! Move selection for playing the game.
//!
//! From an N-position the engine moves into a P-position, preferring terminal
//! targets and then the lexicographically smallest cell. From a P-position no
//! winning move exists; the engine then minimizes the number of winning
//! replies left to the opponent, ties again broken lexicographically.

use thiserror::Error;

use crate::game::{is_terminal, moves, Position, TerminalSpec};
use crate::sequences::PPairStream;
use crate::solver::{GrundyTable, PTable};

/// Anything that can tell P-positions from N-positions.
pub trait Classifier {
    fn is_p(&self, p: Position) -> bool;
}

impl<C: Classifier + ?Sized> Classifier for &C {
    fn is_p(&self, p: Position) -> bool {
        (**self).is_p(p)
    }
}

impl Classifier for GrundyTable {
    fn is_p(&self, p: Position) -> bool {
        GrundyTable::is_p(self, p)
    }
}

impl Classifier for PTable {
    fn is_p(&self, p: Position) -> bool {
        PTable::is_p(self, p)
    }
}

impl Classifier for PPairStream {
    fn is_p(&self, p: Position) -> bool {
        self.classify_ref(p).is_p()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("{0} is terminal; the game is over")]
    Terminal(Position),
}

fn ensure_live(p: Position, spec: TerminalSpec) -> Result<(), EngineError> {
    if is_terminal(p, spec) {
        Err(EngineError::Terminal(p))
    } else {
        Ok(())
    }
}

/// Every move from `p` into a P-position, sorted lexicographically. Empty iff
/// `p` is a P-position (or terminal).
pub fn winning_moves<C: Classifier>(c: &C, p: Position, spec: TerminalSpec) -> Vec<Position> {
    let mut out: Vec<Position> = moves(p, spec).filter(|&q| c.is_p(q)).collect();
    out.sort_unstable();
    out
}

/// A winning move from `p`, or `None` when `p` is a P-position.
pub fn best_move<C: Classifier>(c: &C, p: Position, spec: TerminalSpec) -> Result<Option<Position>, EngineError> {
    ensure_live(p, spec)?;
    Ok(moves(p, spec).filter(|&q| c.is_p(q)).min_by_key(|&q| (!is_terminal(q, spec), q)))
}

/// How many winning moves the opponent has after the queen lands on `q`.
pub fn winning_reply_count<C: Classifier>(c: &C, q: Position, spec: TerminalSpec) -> usize {
    moves(q, spec).filter(|&r| c.is_p(r)).count()
}

/// The move from `p` leaving the opponent the fewest winning replies.
pub fn fallback_move<C: Classifier>(c: &C, p: Position, spec: TerminalSpec) -> Result<Position, EngineError> {
    ensure_live(p, spec)?;
    Ok(moves(p, spec)
        .min_by_key(|&q| (winning_reply_count(c, q, spec), q))
        .expect("a non-terminal position has at least one move"))
}

/// The engine's move: [`best_move`] when one exists, else [`fallback_move`].
pub fn engine_reply<C: Classifier>(c: &C, p: Position, spec: TerminalSpec) -> Result<Position, EngineError> {
    match best_move(c, p, spec)? {
        Some(q) => Ok(q),
        None => fallback_move(c, p, spec),
    }
}
