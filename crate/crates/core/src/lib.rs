//! Wythoff's game with terminal set `{(x, y) : x + y <= k}`.
//!
//! * [`game`]: positions, the terminal predicate, queen moves.
//! * [`fibword`]: the Fibonacci-word substitutions and exact `⌊nφ⌋`.
//! * [`sequences`]: the P-position pairs `(a_n, b_n)`, cumulative and closed form.
//! * [`solver`]: retrograde Sprague–Grundy tables over a bounded board.
//! * [`engine`]: move choice for play against a human.
//! * [`verify`]: named cross-checks between the solver and the closed forms.
//! * [`export`]: CSV / JSON / text emitters and the binary table dump.
//!
//! With the default `parallel` feature the solver and the verification
//! harness spread independent work over rayon's thread pool; without it every
//! [`Execution`] runs sequentially.

pub mod engine;
pub mod export;
pub mod fibword;
pub mod game;
pub mod sequences;
pub mod solver;
pub mod verify;

mod exec;

pub use exec::Execution;
pub use game::{is_terminal, move_kind, moves, MoveKind, Position, TerminalSpec};
pub use sequences::{PPairStream, PositionClass};
pub use solver::{build_p_table, build_table, GrundyTable, PTable};
