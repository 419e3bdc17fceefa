//! Cross-checks between the brute-force solver and the closed-form
//! description of the P-positions.
//!
//! Each check returns a [`CheckReport`]; a failing report always carries a
//! counterexample whose `inputs` are enough to reproduce it. Every check also
//! has an injected-fault fixture ([`Fault`]) that corrupts exactly the data it
//! inspects, so the harness itself can be shown to fail.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exec::Execution;
use crate::fibword::{block_c, block_d, fib, floor_phi, rho, Alphabet, Word};
use crate::game::{is_terminal, moves, Position, TerminalSpec};
use crate::sequences::{a_closed, anchor_points, b_closed, decompose_index, IndexDecomposition, PPairStream};
use crate::solver::{build_table_with, GrundyTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{check}: {reason}")]
    Precondition { check: CheckKind, reason: String },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unknown fault fixture `{0}`")]
    UnknownFault(String),
}

/// The named checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    /// Zero-Grundy cells of a solved board equal `P_k` on that board.
    PsetEquivalence,
    /// No P cell moves to a P cell; every N cell has a move to a P cell.
    PnPartition,
    /// `k = 0`: zero-Grundy cells with `x <= y` are `(⌊nφ⌋, ⌊nφ⌋ + n)`.
    ClassicalBeatty,
    /// Closed form agrees with cumulative sums on every index.
    ClosedForm,
    /// `{a_n}` and `{b_n}` partition `[k + 1, bound]`.
    Partition,
    /// Lengths and symbol sums of the `C` and `D` blocks.
    BlockCounts,
    /// `b_n = a_n + n + k` and the block-boundary anchors.
    AnchorsAndOffset,
    /// No diagonal move from `(b_n + h, a_n)` or `(a_n, b_n + h)` reaches `P_k`.
    DiagonalLemma,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::PsetEquivalence,
        CheckKind::PnPartition,
        CheckKind::ClassicalBeatty,
        CheckKind::ClosedForm,
        CheckKind::Partition,
        CheckKind::BlockCounts,
        CheckKind::AnchorsAndOffset,
        CheckKind::DiagonalLemma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::PsetEquivalence => "pset_equivalence",
            CheckKind::PnPartition => "pn_partition",
            CheckKind::ClassicalBeatty => "classical_beatty",
            CheckKind::ClosedForm => "closed_form",
            CheckKind::Partition => "partition",
            CheckKind::BlockCounts => "block_counts",
            CheckKind::AnchorsAndOffset => "anchors_and_offset",
            CheckKind::DiagonalLemma => "diagonal_lemma",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckKind::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| VerifyError::UnknownCheck(s.to_owned()))
    }
}

impl Serialize for CheckKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub inputs: Value,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: CheckKind,
    pub k: u64,
    /// Tested range: board bound, index bound, value bound or block count.
    pub bound: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    fn new(check: CheckKind, k: u64, bound: u64, counterexample: Option<Counterexample>) -> Self {
        let status = if counterexample.is_some() { Status::Fail } else { Status::Pass };
        CheckReport { check, k, bound, status, counterexample }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn cx(inputs: Value, expected: Value, actual: Value) -> Option<Counterexample> {
    Some(Counterexample { inputs, expected, actual })
}

/// A deliberate corruption of the data one check inspects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fault {
    /// Remove a position from the expected `P_k`.
    DropPPosition(Position),
    /// Flip the P/N status of one solved cell.
    FlipCell(Position),
    /// Classical pairs built as `(⌊nφ⌋, ⌊nφ⌋ + n + 1)`.
    ShiftedBeatty,
    /// Let `h` run over `0..=k` instead of `0..k`.
    WidenHRange,
    /// Build `b` by summing `c` instead of `d = c + 1`.
    DifferenceEqualsC,
    /// Drop the last symbol of `C_3`.
    TruncatedBlock,
    /// Start `b` at `2k + 3`.
    ShiftedB1,
    /// Pretend `(b_1 − 1, a_1 − 1)` is a P-position.
    PhantomDiagonalP,
}

impl Fault {
    pub fn target(&self) -> CheckKind {
        match self {
            Fault::DropPPosition(_) => CheckKind::PsetEquivalence,
            Fault::FlipCell(_) => CheckKind::PnPartition,
            Fault::ShiftedBeatty => CheckKind::ClassicalBeatty,
            Fault::WidenHRange => CheckKind::ClosedForm,
            Fault::DifferenceEqualsC => CheckKind::Partition,
            Fault::TruncatedBlock => CheckKind::BlockCounts,
            Fault::ShiftedB1 => CheckKind::AnchorsAndOffset,
            Fault::PhantomDiagonalP => CheckKind::DiagonalLemma,
        }
    }
}

/// A fault bound to the `k` whose check it corrupts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectedFault {
    pub k: u64,
    pub fault: Fault,
}

impl InjectedFault {
    pub const FIXTURES: [&'static str; 8] = [
        "drop-p-position",
        "flip-cell",
        "shifted-beatty",
        "widen-h-range",
        "difference-equals-c",
        "truncated-block",
        "shifted-b1",
        "phantom-diagonal-p",
    ];

    /// The canonical self-test fixtures, all at `k = 5` except the classical one.
    pub fn fixture(name: &str) -> Result<Self, VerifyError> {
        let (k, fault) = match name {
            "drop-p-position" => (5, Fault::DropPPosition(Position::new(12, 6))),
            "flip-cell" => (5, Fault::FlipCell(Position::new(12, 7))),
            "shifted-beatty" => (0, Fault::ShiftedBeatty),
            "widen-h-range" => (5, Fault::WidenHRange),
            "difference-equals-c" => (5, Fault::DifferenceEqualsC),
            "truncated-block" => (5, Fault::TruncatedBlock),
            "shifted-b1" => (5, Fault::ShiftedB1),
            "phantom-diagonal-p" => (5, Fault::PhantomDiagonalP),
            other => return Err(VerifyError::UnknownFault(other.to_owned())),
        };
        Ok(InjectedFault { k, fault })
    }
}

fn pos_json(p: Position) -> Value {
    json!({ "x": p.x, "y": p.y })
}

fn need(check: CheckKind, ok: bool, reason: impl FnOnce() -> String) -> Result<(), VerifyError> {
    if ok {
        Ok(())
    } else {
        Err(VerifyError::Precondition { check, reason: reason() })
    }
}

fn solve(check: CheckKind, k: u64, bound: u64, exec: Execution) -> Result<GrundyTable, VerifyError> {
    build_table_with(TerminalSpec::new(k), bound, exec)
        .map_err(|e| VerifyError::Precondition { check, reason: e.to_string() })
}

/// `P_k` restricted to the board, as a mask indexed `x * (N + 1) + y`.
fn expected_p_mask(k: u64, bound: u64) -> Vec<bool> {
    let side = bound as usize + 1;
    let mut mask = vec![false; side * side];
    let spec = TerminalSpec::new(k);
    for x in 0..=bound.min(k) {
        for y in 0..=(k - x).min(bound) {
            debug_assert!(is_terminal(Position::new(x, y), spec));
            mask[x as usize * side + y as usize] = true;
        }
    }
    for (_, a, b) in PPairStream::new(k).pairs_within(bound) {
        mask[a as usize * side + b as usize] = true;
        mask[b as usize * side + a as usize] = true;
    }
    mask
}

fn p_label(p: bool) -> Value {
    Value::from(if p { "P" } else { "N" })
}

fn pset_against(table: &GrundyTable, fault: Option<&Fault>) -> CheckReport {
    let (k, bound) = (table.spec().k(), table.bound());
    let side = bound as usize + 1;
    let mut expected = expected_p_mask(k, bound);
    if let Some(Fault::DropPPosition(p)) = fault {
        if p.within(bound) {
            expected[p.x as usize * side + p.y as usize] = false;
        }
    }
    let actual = table.zero_mask();
    let found = expected.iter().zip(&actual).position(|(e, a)| e != a).map(|i| {
        let p = Position::new((i / side) as u64, (i % side) as u64);
        cx(
            json!({ "k": k, "bound": bound, "position": pos_json(p) }),
            p_label(expected[i]),
            json!({ "class": p_label(actual[i]), "grundy": table.value(p.x, p.y) }),
        )
    });
    CheckReport::new(CheckKind::PsetEquivalence, k, bound, found.flatten())
}

fn pn_against(table: &GrundyTable, fault: Option<&Fault>, exec: Execution) -> CheckReport {
    let (k, bound) = (table.spec().k(), table.bound());
    let spec = table.spec();
    let side = bound as usize + 1;
    let mut mask = table.zero_mask();
    if let Some(Fault::FlipCell(p)) = fault {
        if p.within(bound) {
            let i = p.x as usize * side + p.y as usize;
            mask[i] = !mask[i];
        }
    }
    let is_p = |q: Position| mask[q.x as usize * side + q.y as usize];
    let per_column = exec.map_range(
        0..=bound as usize,
        || (),
        |_, x| {
            (0..=bound).find_map(|y| {
                let p = Position::new(x as u64, y);
                if is_terminal(p, spec) {
                    return None;
                }
                let into_p = moves(p, spec).find(|&q| is_p(q));
                match (is_p(p), into_p) {
                    (true, Some(q)) => cx(
                        json!({ "k": k, "position": pos_json(p) }),
                        Value::from("no move from a P-position into P"),
                        json!({ "move_to": pos_json(q) }),
                    ),
                    (false, None) => cx(
                        json!({ "k": k, "position": pos_json(p) }),
                        Value::from("an N-position has a move into P"),
                        Value::from("no move into P"),
                    ),
                    _ => None,
                }
            })
        },
    );
    CheckReport::new(CheckKind::PnPartition, k, bound, per_column.into_iter().flatten().next())
}

/// Zero-Grundy cells of the solved board equal `P_k` within the board.
pub fn check_pset_equivalence(k: u64, bound: u64) -> Result<CheckReport, VerifyError> {
    run_check(CheckKind::PsetEquivalence, k, bound, None, Execution::default())
}

/// Exhaustive P/N partition property on a solved board.
pub fn check_pn_partition(k: u64, bound: u64) -> Result<CheckReport, VerifyError> {
    run_check(CheckKind::PnPartition, k, bound, None, Execution::default())
}

pub fn check_classical_beatty(bound: u64) -> Result<CheckReport, VerifyError> {
    run_check(CheckKind::ClassicalBeatty, 0, bound, None, Execution::default())
}

pub fn check_closed_form(k: u64, max_index: u64) -> Result<CheckReport, VerifyError> {
    run_check(CheckKind::ClosedForm, k, max_index, None, Execution::default())
}

pub fn check_partition(k: u64, value_bound: u64) -> Result<CheckReport, VerifyError> {
    run_check(CheckKind::Partition, k, value_bound, None, Execution::default())
}

pub fn check_block_counts(k: u64, max_i: u64) -> Result<CheckReport, VerifyError> {
    run_check(CheckKind::BlockCounts, k, max_i, None, Execution::default())
}

pub fn check_anchors_and_offset(k: u64, max_n: u64) -> Result<CheckReport, VerifyError> {
    run_check(CheckKind::AnchorsAndOffset, k, max_n, None, Execution::default())
}

pub fn check_diagonal_lemma(k: u64, bound: u64) -> Result<CheckReport, VerifyError> {
    run_check(CheckKind::DiagonalLemma, k, bound, None, Execution::default())
}

/// Runs one check, applying `fault` only when it targets this check.
pub fn run_check(
    check: CheckKind,
    k: u64,
    bound: u64,
    fault: Option<&Fault>,
    exec: Execution,
) -> Result<CheckReport, VerifyError> {
    let fault = fault.filter(|f| f.target() == check);
    match check {
        CheckKind::PsetEquivalence => {
            need(check, bound >= 2 * k + 2, || format!("bound {bound} < 2k+2 = {}", 2 * k + 2))?;
            Ok(pset_against(&solve(check, k, bound, exec)?, fault))
        }
        CheckKind::PnPartition => Ok(pn_against(&solve(check, k, bound, exec)?, fault, exec)),
        CheckKind::ClassicalBeatty => {
            need(check, k == 0, || format!("classical check needs k=0, got {k}"))?;
            Ok(classical_beatty(&solve(check, 0, bound, exec)?, fault))
        }
        CheckKind::ClosedForm => {
            need(check, k >= 1, || "the closed form needs k >= 1".into())?;
            Ok(closed_form(k, bound, fault))
        }
        CheckKind::Partition => {
            need(check, k >= 1, || "needs k >= 1".into())?;
            Ok(partition(k, bound, fault))
        }
        CheckKind::BlockCounts => {
            need(check, k >= 1 && (1..=40).contains(&bound), || {
                format!("needs k >= 1 and 1 <= max_i <= 40, got k={k}, max_i={bound}")
            })?;
            Ok(block_counts(k, bound as usize, fault))
        }
        CheckKind::AnchorsAndOffset => {
            need(check, k >= 1, || "needs k >= 1".into())?;
            Ok(anchors_and_offset(k, bound, fault))
        }
        CheckKind::DiagonalLemma => {
            need(check, bound >= 2 * k + 2, || format!("bound {bound} < 2k+2 = {}", 2 * k + 2))?;
            Ok(diagonal_lemma(k, bound, fault, exec))
        }
    }
}

fn classical_beatty(table: &GrundyTable, fault: Option<&Fault>) -> CheckReport {
    let bound = table.bound();
    let shift = u64::from(matches!(fault, Some(Fault::ShiftedBeatty)));
    let mut expected = Vec::new();
    for n in 0u64.. {
        let a = floor_phi(n).expect("board-sized argument");
        let b = a + n + if n > 0 { shift } else { 0 };
        if a > bound {
            break;
        }
        if b <= bound {
            expected.push(Position::new(a, b));
        }
    }
    let actual: Vec<Position> = table.p_positions().into_iter().filter(|p| p.x <= p.y).collect();
    let found = if expected == actual {
        None
    } else {
        let i = expected.iter().zip(&actual).position(|(e, a)| e != a).unwrap_or(expected.len().min(actual.len()));
        cx(
            json!({ "bound": bound, "pair_rank": i }),
            expected.get(i).map_or(Value::Null, |&p| pos_json(p)),
            actual.get(i).map_or(Value::Null, |&p| pos_json(p)),
        )
    };
    CheckReport::new(CheckKind::ClassicalBeatty, 0, bound, found)
}

/// Walks `(n, h, t)` in lexicographic order, which enumerates the indices
/// `2, 3, 4, ...` in sequence, and compares both closed forms with the
/// cumulative stream. Also checks `decompose_index` inverts the walk.
fn closed_form(k: u64, max_index: u64, fault: Option<&Fault>) -> CheckReport {
    let report = |c| CheckReport::new(CheckKind::ClosedForm, k, max_index, c);
    let h_end = if matches!(fault, Some(Fault::WidenHRange)) { k + 1 } else { k };
    let mut stream = PPairStream::new(k);
    stream.ensure_len(max_index.max(1) as usize);
    let (a, b) = (stream.a_values(), stream.b_values());
    let mut m = 2u64;
    'walk: for n in 1.. {
        for h in 0..h_end {
            for t in 1..=fib(n) {
                if m > max_index {
                    break 'walk;
                }
                let dec = match IndexDecomposition::new(k, n, h, t) {
                    Ok(dec) => dec,
                    Err(e) => {
                        return report(cx(
                            json!({ "k": k, "n": n, "h": h, "t": t }),
                            Value::from("a valid decomposition"),
                            Value::from(e.to_string()),
                        ))
                    }
                };
                let inverse = decompose_index(k, m);
                let (ca, cb) = (a_closed(&dec), b_closed(&dec));
                let (sa, sb) = (a[m as usize - 1], b[m as usize - 1]);
                if dec.index() != m || inverse != Ok(dec) || ca != sa || cb != sb {
                    return report(cx(
                        json!({ "k": k, "index": m, "n": n, "h": h, "t": t }),
                        json!({ "index": m, "a": sa, "b": sb }),
                        json!({ "index": dec.index(), "a": ca, "b": cb, "decompose": format!("{inverse:?}") }),
                    ));
                }
                m += 1;
            }
        }
    }
    report(None)
}

fn partition(k: u64, value_bound: u64, fault: Option<&Fault>) -> CheckReport {
    let mut stream = PPairStream::new(k);
    stream.ensure_value(value_bound);
    let a = stream.a_values();
    let b: Vec<u64> = if matches!(fault, Some(Fault::DifferenceEqualsC)) {
        a.iter().map(|&an| 2 * k + 2 + (an - a[0])).collect()
    } else {
        stream.b_values().to_vec()
    };
    let mut hits = vec![0u8; value_bound as usize + 1];
    for &v in a.iter().chain(&b) {
        if v <= value_bound {
            hits[v as usize] = hits[v as usize].saturating_add(1);
        }
    }
    let found = hits.iter().enumerate().find_map(|(v, &count)| {
        let want = u8::from(v as u64 > k);
        (count != want).then(|| cx(json!({ "k": k, "value": v }), Value::from(want), Value::from(count)))
    });
    CheckReport::new(CheckKind::Partition, k, value_bound, found.flatten())
}

fn block_counts(k: u64, max_i: usize, fault: Option<&Fault>) -> CheckReport {
    let report = |c| CheckReport::new(CheckKind::BlockCounts, k, max_i as u64, c);
    let build = |i: usize| -> Word {
        let c = block_c(i, k).expect("checked range");
        if i == 3 && matches!(fault, Some(Fault::TruncatedBlock)) {
            let s = c.symbols();
            Word::new(Alphabet::OneTwo, s[..s.len() - 1].to_vec()).expect("same alphabet")
        } else {
            c
        }
    };
    let mut next_c = build(1);
    for i in 1..=max_i {
        let c = next_c;
        next_c = build(i + 1);
        let d = match c.shifted_up() {
            Ok(d) => d,
            Err(e) => {
                return report(cx(json!({ "k": k, "i": i }), Value::from("a {1,2} block"), Value::from(e.to_string())))
            }
        };
        let expected = [k * fib(i), k * fib(i), k * fib(i + 1), k * fib(i + 2)];
        let actual = [c.len() as u64, d.len() as u64, c.sum(), d.sum()];
        let rho_ok = rho(&d).map(|w| w == next_c).unwrap_or(false);
        let d_direct = block_d(i, k).map(|w| w.len() as u64 == actual[1]).unwrap_or(false);
        if expected != actual || !rho_ok || !d_direct {
            return report(cx(
                json!({ "k": k, "i": i }),
                json!({ "len_c": expected[0], "len_d": expected[1], "sum_c": expected[2], "sum_d": expected[3], "rho_d_is_next_c": true }),
                json!({ "len_c": actual[0], "len_d": actual[1], "sum_c": actual[2], "sum_d": actual[3], "rho_d_is_next_c": rho_ok }),
            ));
        }
    }
    report(None)
}

fn anchors_and_offset(k: u64, max_n: u64, fault: Option<&Fault>) -> CheckReport {
    let report = |c| CheckReport::new(CheckKind::AnchorsAndOffset, k, max_n, c);
    let mut stream = PPairStream::new(k);
    stream.ensure_len(max_n.max(1) as usize);
    let a = stream.a_values();
    let mut b = stream.b_values().to_vec();
    if matches!(fault, Some(Fault::ShiftedB1)) {
        b[0] += 1;
    }
    for n in 1..=max_n {
        let i = n as usize - 1;
        if b[i] != a[i] + n + k {
            return report(cx(
                json!({ "k": k, "n": n }),
                json!({ "b_n": a[i] + n + k }),
                json!({ "a_n": a[i], "b_n": b[i] }),
            ));
        }
    }
    for n in 1.. {
        let Ok(anchor) = anchor_points(k, n) else { break };
        if anchor.b_index > max_n {
            break;
        }
        let got_b = b[anchor.b_index as usize - 1];
        let got_a = (anchor.a_index <= max_n).then(|| a[anchor.a_index as usize - 1]);
        if got_b != anchor.b_value || got_a.is_some_and(|v| v != anchor.a_value) {
            return report(cx(
                json!({ "k": k, "n": n }),
                serde_json::to_value(anchor).expect("plain data"),
                json!({ "a": got_a, "b": got_b }),
            ));
        }
    }
    report(None)
}

fn diagonal_lemma(k: u64, bound: u64, fault: Option<&Fault>, exec: Execution) -> CheckReport {
    let side = bound as usize + 1;
    let mut mask = expected_p_mask(k, bound);
    let pairs = PPairStream::new(k).pairs_within(bound);
    if let (Some(Fault::PhantomDiagonalP), Some(&(_, a1, b1))) = (fault, pairs.first()) {
        mask[(b1 - 1) as usize * side + (a1 - 1) as usize] = true;
    }
    let in_p = |x: u64, y: u64| mask[x as usize * side + y as usize];
    // Rows holding (b_n, a_n) and columns holding (a_n, b_n).
    let escapes = exec.map_slice(&pairs, |&(n, a, b)| {
        for h in 0..=(bound - b) {
            for (fx, fy) in [(b + h, a), (a, b + h)] {
                for t in 1..=fx.min(fy) {
                    if in_p(fx - t, fy - t) {
                        return cx(
                            json!({ "k": k, "n": n, "h": h, "from": pos_json(Position::new(fx, fy)), "t": t }),
                            Value::from("diagonal target outside P_k"),
                            pos_json(Position::new(fx - t, fy - t)),
                        );
                    }
                }
            }
        }
        None
    });
    CheckReport::new(CheckKind::DiagonalLemma, k, bound, escapes.into_iter().flatten().next())
}

/// Grid of checks for [`run_all`].
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    /// `k` values for the solved-board checks; `k = 0` adds the classical check.
    pub board_ks: Vec<u64>,
    pub board_bound: u64,
    /// `k` values for the sequence identities (each must be at least 1).
    pub sequence_ks: Vec<u64>,
    pub max_index: u64,
    pub partition_bound: u64,
    pub max_block: u64,
    pub diagonal_ks: Vec<u64>,
    pub diagonal_bound: u64,
    /// Restrict to these checks; `None` runs all of them.
    pub only: Option<Vec<CheckKind>>,
    pub faults: Vec<InjectedFault>,
    pub exec: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            board_ks: vec![0, 1, 2, 3, 5, 8],
            board_bound: 200,
            sequence_ks: vec![1, 2, 3, 5, 8],
            max_index: 100_000,
            partition_bound: 1_000_000,
            max_block: 25,
            diagonal_ks: vec![1, 5],
            diagonal_bound: 500,
            only: None,
            faults: Vec::new(),
            exec: Execution::default(),
        }
    }
}

impl VerifyConfig {
    /// No checks at all.
    pub fn empty() -> Self {
        VerifyConfig { board_ks: vec![], sequence_ks: vec![], diagonal_ks: vec![], ..Self::default() }
    }

    /// The planned `(check, k, bound)` triples in report order.
    pub fn plan(&self) -> Vec<(CheckKind, u64, u64)> {
        let mut plan = Vec::new();
        for &k in &self.board_ks {
            plan.push((CheckKind::PsetEquivalence, k, self.board_bound));
            plan.push((CheckKind::PnPartition, k, self.board_bound));
            if k == 0 {
                plan.push((CheckKind::ClassicalBeatty, 0, self.board_bound));
            }
        }
        for &k in &self.sequence_ks {
            plan.push((CheckKind::ClosedForm, k, self.max_index));
            plan.push((CheckKind::Partition, k, self.partition_bound));
            plan.push((CheckKind::BlockCounts, k, self.max_block));
            plan.push((CheckKind::AnchorsAndOffset, k, self.max_index));
        }
        for &k in &self.diagonal_ks {
            plan.push((CheckKind::DiagonalLemma, k, self.diagonal_bound));
        }
        if let Some(only) = &self.only {
            plan.retain(|(c, _, _)| only.contains(c));
        }
        plan
    }

    fn fault_for(&self, check: CheckKind, k: u64) -> Option<&Fault> {
        self.faults.iter().find(|f| f.k == k && f.fault.target() == check).map(|f| &f.fault)
    }
}

/// Runs every planned check, independent checks concurrently. Reports come
/// back in plan order regardless of scheduling.
pub fn run_all(config: &VerifyConfig) -> Result<Vec<CheckReport>, VerifyError> {
    let plan = config.plan();
    config
        .exec
        .map_slice(&plan, |&(check, k, bound)| run_check(check, k, bound, config.fault_for(check, k), config.exec))
        .into_iter()
        .collect()
}
