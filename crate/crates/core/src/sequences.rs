//! The P-position pairs `(a_n, b_n)` of the game with terminal set
//! `x + y <= k`.
//!
//! Two independent routes produce the same numbers:
//!
//! * [`PPairStream`] sums the difference sequence `c` (the `C` blocks, each
//!   `k` copies of a Fibonacci-word block) starting from `a_1 = k + 1`, and
//!   `d = c + 1` starting from `b_1 = 2k + 2`;
//! * [`a_closed`] / [`b_closed`] evaluate any index directly from its
//!   [`IndexDecomposition`] using Fibonacci numbers and [`floor_phi`].
//!
//! `k = 0` is accepted everywhere as classical Wythoff, whose pairs are
//! `(⌊nφ⌋, ⌊nφ⌋ + n)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock, RwLockReadGuard};

use serde::Serialize;
use thiserror::Error;

use crate::fibword::{fib, floor_phi, FibError, FibonacciWord, FIB_MAX_INDEX};
use crate::game::{is_terminal, Position, TerminalSpec};

/// [`PPairStream::classify`] materializes the stream up to this value; larger
/// coordinates are decided by binary search over the closed form.
pub const MATERIALIZE_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("index {0} has no closed form; a_1 and b_1 are base cases")]
    BaseIndex(u64),
    #[error("the closed form needs k >= 1")]
    ClassicalK,
    #[error("invalid decomposition for k={k}: n={n}, h={h}, t={t}")]
    InvalidDecomposition { k: u64, n: usize, h: u64, t: u64 },
    #[error("value out of the 64-bit range (k={k}, index {index})")]
    Overflow { k: u64, index: u128 },
    #[error(transparent)]
    Fib(#[from] FibError),
}

/// Where a position falls in the P/N split of the game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionClass {
    /// Inside the terminal set.
    TerminalP,
    /// `(a_n, b_n)` or `(b_n, a_n)` for the given `n`.
    PairP {
        index: u64,
    },
    N,
}

impl PositionClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PositionClass::TerminalP => "terminal-P",
            PositionClass::PairP { .. } => "pair-P",
            PositionClass::N => "N",
        }
    }

    #[inline]
    pub fn is_p(self) -> bool {
        !matches!(self, PositionClass::N)
    }

    pub fn pair_index(self) -> Option<u64> {
        match self {
            PositionClass::PairP { index } => Some(index),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
enum Differences {
    /// Walks `C_1^{(k)}, C_2^{(k)}, ...`: block `i`, copy `copy < k`, symbol `offset`.
    Blocks { word: FibonacciWord, block: usize, copy: u64, offset: usize },
    /// Classical Wythoff.
    Beatty,
}

/// Lazily extended prefix of `a_n`, `b_n` for one `k`.
#[derive(Debug, Clone)]
pub struct PPairStream {
    k: u64,
    a: Vec<u64>,
    b: Vec<u64>,
    diffs: Differences,
}

impl PPairStream {
    pub fn new(k: u64) -> Self {
        let diffs = if k == 0 {
            Differences::Beatty
        } else {
            Differences::Blocks { word: FibonacciWord::new(), block: 1, copy: 0, offset: 0 }
        };
        let mut stream = PPairStream { k, a: Vec::new(), b: Vec::new(), diffs };
        stream.push_next();
        stream
    }

    #[inline]
    pub fn k(&self) -> u64 {
        self.k
    }

    /// Number of materialized pairs.
    #[inline]
    pub fn len(&self) -> usize {
        self.a.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `a_1, a_2, ...` as materialized so far.
    pub fn a_values(&self) -> &[u64] {
        &self.a
    }

    pub fn b_values(&self) -> &[u64] {
        &self.b
    }

    fn next_difference(&mut self) -> u64 {
        let k = self.k;
        match &mut self.diffs {
            Differences::Blocks { word, block, copy, offset } => {
                let c = word.block(*block)[*offset];
                *offset += 1;
                if *offset as u64 == fib(*block) {
                    *offset = 0;
                    *copy += 1;
                    if *copy == k {
                        *copy = 0;
                        *block += 1;
                    }
                }
                c as u64
            }
            Differences::Beatty => unreachable!("classical pairs are not summed"),
        }
    }

    fn push_next(&mut self) {
        let n = self.a.len() as u64 + 1;
        let (a, b) = match self.diffs {
            Differences::Beatty => {
                let a = floor_phi(n).expect("classical stream beyond exact range");
                (a, a + n)
            }
            _ if n == 1 => (self.k + 1, 2 * self.k + 2),
            _ => {
                let c = self.next_difference();
                (self.a[n as usize - 2] + c, self.b[n as usize - 2] + c + 1)
            }
        };
        self.a.push(a);
        self.b.push(b);
    }

    /// Materializes at least `n` pairs.
    pub fn ensure_len(&mut self, n: usize) {
        if n > self.a.len() {
            self.a.reserve(n - self.a.len());
            self.b.reserve(n - self.b.len());
        }
        while self.a.len() < n {
            self.push_next();
        }
    }

    /// Materializes pairs until the last `a_n` is at least `value`, so every
    /// `a_n` and `b_n` not exceeding `value` is present.
    pub fn ensure_value(&mut self, value: u64) {
        while *self.a.last().expect("stream holds a_1") < value {
            self.push_next();
        }
    }

    /// True when every pair with `a_n <= value` is materialized.
    #[inline]
    pub fn covers(&self, value: u64) -> bool {
        self.a.last().is_some_and(|&last| last >= value)
    }

    /// `a_n` (1-based).
    pub fn a(&mut self, n: usize) -> u64 {
        assert!(n >= 1, "sequence index starts at 1");
        self.ensure_len(n);
        self.a[n - 1]
    }

    pub fn b(&mut self, n: usize) -> u64 {
        assert!(n >= 1, "sequence index starts at 1");
        self.ensure_len(n);
        self.b[n - 1]
    }

    /// `c_n = a_{n+1} − a_n`.
    pub fn c(&mut self, n: usize) -> u64 {
        self.a(n + 1) - self.a(n)
    }

    /// `d_n = b_{n+1} − b_n`.
    pub fn d(&mut self, n: usize) -> u64 {
        self.b(n + 1) - self.b(n)
    }

    /// Classification using only what is already materialized, falling back
    /// to the closed form for coordinates past the prefix.
    pub fn classify_ref(&self, p: Position) -> PositionClass {
        if is_terminal(p, TerminalSpec::new(self.k)) {
            return PositionClass::TerminalP;
        }
        let (lo, hi) = (p.x.min(p.y), p.x.max(p.y));
        let index = if self.covers(lo) {
            self.a.binary_search(&lo).ok().filter(|&i| self.b[i] == hi).map(|i| i as u64 + 1)
        } else {
            pair_index_closed(self.k, lo, hi)
        };
        match index {
            Some(index) => PositionClass::PairP { index },
            None => PositionClass::N,
        }
    }

    /// Classifies `p`, extending the stream first when the smaller coordinate
    /// is below [`MATERIALIZE_LIMIT`].
    pub fn classify(&mut self, p: Position) -> PositionClass {
        let lo = p.x.min(p.y);
        if lo <= MATERIALIZE_LIMIT {
            self.ensure_value(lo);
        }
        self.classify_ref(p)
    }

    /// Every non-terminal pair position with both coordinates in `0..=bound`,
    /// as `(n, a_n, b_n)`.
    pub fn pairs_within(&mut self, bound: u64) -> Vec<(u64, u64, u64)> {
        self.ensure_value(bound);
        self.a
            .iter()
            .zip(&self.b)
            .enumerate()
            .take_while(|(_, (&a, _))| a <= bound)
            .filter(|(_, (_, &b))| b <= bound)
            .map(|(i, (&a, &b))| (i as u64 + 1, a, b))
            .collect()
    }
}

/// `a_n` built by cumulative summation.
pub fn a_seq(k: u64, n: usize) -> u64 {
    PPairStream::new(k).a(n)
}

/// `b_n` built by cumulative summation.
pub fn b_seq(k: u64, n: usize) -> u64 {
    PPairStream::new(k).b(n)
}

/// The closed-form coordinates `(n, h, t)` of a sequence index
/// `m = k(F_{n+1} − 1) + h·F_n + t + 1` with `0 <= h < k` and `1 <= t <= F_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IndexDecomposition {
    k: u64,
    n: usize,
    h: u64,
    t: u64,
}

impl IndexDecomposition {
    /// Validates the ranges of `h` and `t` and that the index and both
    /// closed-form values fit in 64 bits.
    pub fn new(k: u64, n: usize, h: u64, t: u64) -> Result<Self, SeqError> {
        let invalid = SeqError::InvalidDecomposition { k, n, h, t };
        if k == 0 {
            return Err(SeqError::ClassicalK);
        }
        if n == 0 || n + 3 > FIB_MAX_INDEX || h >= k || t == 0 || t > fib(n) {
            return Err(invalid);
        }
        let dec = IndexDecomposition { k, n, h, t };
        // b is the larger value; its terms bound everything a_closed touches.
        let (k128, h128) = (k as u128, h as u128);
        let b_bound = k128 * fib(n + 3) as u128 + h128 * fib(n + 2) as u128 + t as u128 + 2 + 2 * t as u128;
        let phi_arg = fib(n + 1) as u128 + 1 + t as u128;
        if b_bound > u64::MAX as u128 || phi_arg > crate::fibword::FLOOR_PHI_MAX as u128 {
            return Err(SeqError::Overflow { k, index: dec.index_wide() });
        }
        Ok(dec)
    }

    #[inline]
    pub fn k(&self) -> u64 {
        self.k
    }
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn h(&self) -> u64 {
        self.h
    }
    #[inline]
    pub fn t(&self) -> u64 {
        self.t
    }

    fn index_wide(&self) -> u128 {
        self.k as u128 * (fib(self.n + 1) as u128 - 1) + self.h as u128 * fib(self.n) as u128 + self.t as u128 + 1
    }

    /// The sequence index `m` this decomposition represents.
    pub fn index(&self) -> u64 {
        self.index_wide() as u64
    }

    /// `⌊(F_{n+1}+1+t)φ⌋ − ⌊(F_{n+1}+1)φ⌋`: the partial sum of the first `t`
    /// symbols of `C_{n,1}`.
    fn partial_block_sum(&self) -> u64 {
        let base = fib(self.n + 1) + 1;
        floor_phi(base + self.t).expect("range checked") - floor_phi(base).expect("range checked")
    }
}

/// Inverts the index form of the closed expression for `m >= 2`.
pub fn decompose_index(k: u64, m: u64) -> Result<IndexDecomposition, SeqError> {
    if k == 0 {
        return Err(SeqError::ClassicalK);
    }
    if m < 2 {
        return Err(SeqError::BaseIndex(m));
    }
    let (k128, m128) = (k as u128, m as u128);
    // Block n covers indices k(F_{n+1} − 1) + 2 ..= k(F_{n+2} − 1) + 1.
    let mut n = 1;
    while m128 > k128 * (fib(n + 2) as u128 - 1) + 1 {
        n += 1;
        if n + 3 > FIB_MAX_INDEX {
            return Err(SeqError::Overflow { k, index: m128 });
        }
    }
    let r = m128 - k128 * (fib(n + 1) as u128 - 1) - 1;
    let f = fib(n) as u128;
    let h = ((r - 1) / f) as u64;
    let t = ((r - 1) % f) as u64 + 1;
    IndexDecomposition::new(k, n, h, t)
}

/// `a_m = kF_{n+2} − k + 1 + hF_{n+1} + ⌊(F_{n+1}+1+t)φ⌋ − ⌊(F_{n+1}+1)φ⌋`.
pub fn a_closed(dec: &IndexDecomposition) -> u64 {
    let n = dec.n;
    dec.k * fib(n + 2) - dec.k + 1 + dec.h * fib(n + 1) + dec.partial_block_sum()
}

/// `b_m = kF_{n+3} + hF_{n+2} − k + t + 2 + ⌊(F_{n+1}+1+t)φ⌋ − ⌊(F_{n+1}+1)φ⌋`.
pub fn b_closed(dec: &IndexDecomposition) -> u64 {
    let n = dec.n;
    dec.k * fib(n + 3) + dec.h * fib(n + 2) - dec.k + dec.t + 2 + dec.partial_block_sum()
}

/// `a_m` for any `m >= 1` without materializing the sequence.
pub fn a_nth(k: u64, m: u64) -> Result<u64, SeqError> {
    match (k, m) {
        (_, 0) => Err(SeqError::BaseIndex(0)),
        (0, m) => Ok(floor_phi(m)?),
        (k, 1) => Ok(k + 1),
        (k, m) => Ok(a_closed(&decompose_index(k, m)?)),
    }
}

/// `b_m = a_m + m + k` for any `m >= 1`.
pub fn b_nth(k: u64, m: u64) -> Result<u64, SeqError> {
    let a = a_nth(k, m)?;
    a.checked_add(m).and_then(|v| v.checked_add(k)).ok_or(SeqError::Overflow { k, index: m as u128 })
}

/// Pair index of `(lo, hi)` by binary search over [`a_nth`].
fn pair_index_closed(k: u64, lo: u64, hi: u64) -> Option<u64> {
    if lo <= k {
        return None;
    }
    // a_m >= m for every m, so the index of `lo` is at most `lo`.
    let (mut left, mut right) = (1u64, lo);
    while left < right {
        let mid = left + (right - left) / 2;
        match a_nth(k, mid) {
            Ok(v) if v < lo => left = mid + 1,
            _ => right = mid,
        }
    }
    let m = left;
    match (a_nth(k, m), b_nth(k, m)) {
        (Ok(a), Ok(b)) if a == lo && b == hi => Some(m),
        _ => None,
    }
}

/// Generalized anchor identities: the last index of each `C` block boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Anchors {
    /// `k·F_{n+2} − k + 1`
    pub a_index: u64,
    /// `a` at `a_index`: `k·F_{n+3} − k + 1`
    pub a_value: u64,
    /// `k·F_{n+1} − k + 1`
    pub b_index: u64,
    /// `b` at `b_index`: `k·F_{n+3} − k + 2`
    pub b_value: u64,
}

pub fn anchor_points(k: u64, n: usize) -> Result<Anchors, SeqError> {
    if n + 3 > FIB_MAX_INDEX {
        return Err(SeqError::Overflow { k, index: u128::MAX });
    }
    let k128 = k as u128;
    let term = |i: usize, plus: u128| k128 * fib(i) as u128 - k128 + plus;
    let narrow = |v: u128| u64::try_from(v).map_err(|_| SeqError::Overflow { k, index: v });
    Ok(Anchors {
        a_index: narrow(term(n + 2, 1))?,
        a_value: narrow(term(n + 3, 1))?,
        b_index: narrow(term(n + 1, 1))?,
        b_value: narrow(term(n + 3, 2))?,
    })
}

/// Classifies `p` under terminal threshold `k` with a throwaway stream.
pub fn classify(k: u64, p: Position) -> PositionClass {
    PPairStream::new(k).classify(p)
}

/// One row of the exported sequence table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SequenceRow {
    pub n: u64,
    pub a_n: u64,
    pub b_n: u64,
    pub c_n: u64,
    pub d_n: u64,
}

/// Rows `1..=max_index` of `(n, a_n, b_n, c_n, d_n)`.
pub fn sequence_rows(k: u64, max_index: usize) -> Vec<SequenceRow> {
    if max_index == 0 {
        return Vec::new();
    }
    let mut s = PPairStream::new(k);
    s.ensure_len(max_index + 1);
    (1..=max_index)
        .map(|n| SequenceRow {
            n: n as u64,
            a_n: s.a[n - 1],
            b_n: s.b[n - 1],
            c_n: s.a[n] - s.a[n - 1],
            d_n: s.b[n] - s.b[n - 1],
        })
        .collect()
}

/// A [`PPairStream`] behind a lock, extended on demand by concurrent readers.
#[derive(Debug)]
pub struct SharedStream {
    inner: RwLock<PPairStream>,
}

impl SharedStream {
    pub fn new(k: u64) -> Self {
        SharedStream { inner: RwLock::new(PPairStream::new(k)) }
    }

    /// Read access to a stream that covers every pair with `a_n <= value`.
    pub fn covering(&self, value: u64) -> RwLockReadGuard<'_, PPairStream> {
        {
            let guard = self.inner.read().unwrap_or_else(|e| e.into_inner());
            if guard.covers(value) {
                return guard;
            }
        }
        self.inner.write().unwrap_or_else(|e| e.into_inner()).ensure_value(value);
        self.inner.read().unwrap_or_else(|e| e.into_inner())
    }

    pub fn classify(&self, p: Position) -> PositionClass {
        let lo = p.x.min(p.y).min(MATERIALIZE_LIMIT);
        self.covering(lo).classify_ref(p)
    }
}

/// One [`SharedStream`] per `k`, created on first use.
#[derive(Debug, Default)]
pub struct StreamCache {
    streams: Mutex<HashMap<u64, Arc<SharedStream>>>,
}

impl StreamCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, k: u64) -> Arc<SharedStream> {
        let mut map = self.streams.lock().unwrap_or_else(|e| e.into_inner());
        map.entry(k).or_insert_with(|| Arc::new(SharedStream::new(k))).clone()
    }
}
