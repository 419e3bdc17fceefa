//! Fibonacci-word substitutions and exact golden-ratio floors.
//!
//! `sigma` maps `1 -> 2` and `2 -> 2,1`; starting from `C_{1,1} = [1]` it
//! generates the blocks `C_{i,1}` of length `F_i`. `rho` maps `2 -> 2` and
//! `3 -> 2,1` and carries a `D` block onto the next `C` block. Words carry
//! their alphabet so the two substitutions cannot be mixed up silently.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest argument accepted by [`floor_phi`].
pub const FLOOR_PHI_MAX: u64 = 1 << 62;

/// Largest word [`block_c`] and [`block_d`] will materialize.
pub const MAX_WORD_LEN: u64 = 1 << 28;

/// Highest Fibonacci index whose value fits in a `u64`.
pub const FIB_MAX_INDEX: usize = 93;

/// `FIB[i] = F_i` with `F_0 = 0`, `F_1 = F_2 = 1`.
pub const FIB: [u64; FIB_MAX_INDEX + 1] = fib_table();

const fn fib_table() -> [u64; FIB_MAX_INDEX + 1] {
    let mut t = [0u64; FIB_MAX_INDEX + 1];
    t[1] = 1;
    let mut i = 2;
    while i <= FIB_MAX_INDEX {
        t[i] = t[i - 1] + t[i - 2];
        i += 1;
    }
    t
}

/// `F_i`. Panics for `i > 93`, where the value no longer fits in 64 bits.
#[inline]
pub fn fib(i: usize) -> u64 {
    FIB[i]
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibError {
    #[error("symbol {symbol} is not in the {alphabet} alphabet")]
    Alphabet { symbol: u8, alphabet: Alphabet },
    #[error("{op} expects a word over the {expected} alphabet, got {found}")]
    WrongAlphabet { op: &'static str, expected: Alphabet, found: Alphabet },
    #[error("floor_phi argument {0} exceeds the exact range 0..={FLOOR_PHI_MAX}")]
    Overflow(u64),
    #[error("element {t} is outside block C_{{{n},1}} of length {len}")]
    Index { n: usize, t: u64, len: u64 },
    #[error("block index and multiplicity must be positive (i={i}, k={k})")]
    BlockParams { i: usize, k: u64 },
    #[error("block of {len} symbols exceeds the materialization limit {MAX_WORD_LEN}")]
    TooLong { len: u128 },
}

/// Symbol alphabet of a [`Word`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Alphabet {
    /// `{1, 2}`: the `C` blocks and the image of both substitutions.
    OneTwo,
    /// `{2, 3}`: the `D` blocks.
    TwoThree,
}

impl Alphabet {
    #[inline]
    pub fn contains(self, symbol: u8) -> bool {
        match self {
            Alphabet::OneTwo => symbol == 1 || symbol == 2,
            Alphabet::TwoThree => symbol == 2 || symbol == 3,
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::OneTwo => "{1,2}",
            Alphabet::TwoThree => "{2,3}",
        })
    }
}

/// A finite word over one of the two alphabets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(alphabet: Alphabet, symbols: Vec<u8>) -> Result<Self, FibError> {
        if let Some(&bad) = symbols.iter().find(|&&s| !alphabet.contains(s)) {
            return Err(FibError::Alphabet { symbol: bad, alphabet });
        }
        Ok(Word { alphabet, symbols })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word { alphabet, symbols: Vec::new() }
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.symbols.iter().map(|&s| s as u64).sum()
    }

    /// List concatenation `self ⊎ other`; both words must share an alphabet.
    pub fn concat(&self, other: &Word) -> Result<Word, FibError> {
        if self.alphabet != other.alphabet {
            return Err(FibError::WrongAlphabet { op: "concat", expected: self.alphabet, found: other.alphabet });
        }
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        Ok(Word { alphabet: self.alphabet, symbols })
    }

    /// Adds one to every symbol, turning a `C` block into the matching `D` block.
    pub fn shifted_up(&self) -> Result<Word, FibError> {
        self.expect(Alphabet::OneTwo, "shifted_up")?;
        Ok(Word { alphabet: Alphabet::TwoThree, symbols: self.symbols.iter().map(|s| s + 1).collect() })
    }

    fn expect(&self, alphabet: Alphabet, op: &'static str) -> Result<(), FibError> {
        if self.alphabet == alphabet {
            Ok(())
        } else {
            Err(FibError::WrongAlphabet { op, expected: alphabet, found: self.alphabet })
        }
    }
}

fn substitute_sigma(symbols: &[u8], out: &mut Vec<u8>) {
    for &s in symbols {
        if s == 1 {
            out.push(2);
        } else {
            out.extend_from_slice(&[2, 1]);
        }
    }
}

/// `1 -> 2`, `2 -> 2,1`.
pub fn sigma(w: &Word) -> Result<Word, FibError> {
    w.expect(Alphabet::OneTwo, "sigma")?;
    let mut symbols = Vec::with_capacity(w.len() * 2);
    substitute_sigma(&w.symbols, &mut symbols);
    Ok(Word { alphabet: Alphabet::OneTwo, symbols })
}

/// `2 -> 2`, `3 -> 2,1`.
pub fn rho(w: &Word) -> Result<Word, FibError> {
    w.expect(Alphabet::TwoThree, "rho")?;
    let mut symbols = Vec::with_capacity(w.len() * 2);
    for &s in &w.symbols {
        if s == 2 {
            symbols.push(2);
        } else {
            symbols.extend_from_slice(&[2, 1]);
        }
    }
    Ok(Word { alphabet: Alphabet::OneTwo, symbols })
}

/// Incrementally grown `C_{i,1}` blocks.
///
/// For `i >= 2` every block is a prefix of the next one (`C_{2,1} = [2]` and
/// `sigma` preserves prefixes), so a single buffer holding the longest block
/// seen so far serves every smaller index.
#[derive(Debug, Clone)]
pub struct FibonacciWord {
    level: usize,
    symbols: Vec<u8>,
}

impl Default for FibonacciWord {
    fn default() -> Self {
        Self::new()
    }
}

impl FibonacciWord {
    pub fn new() -> Self {
        FibonacciWord { level: 2, symbols: vec![2] }
    }

    /// The symbols of `C_{i,1}`, growing the buffer if needed.
    pub fn block(&mut self, i: usize) -> &[u8] {
        assert!(i >= 1, "block index starts at 1");
        if i == 1 {
            return &[1];
        }
        while self.level < i {
            let mut next = Vec::with_capacity(fib(self.level + 1) as usize);
            substitute_sigma(&self.symbols, &mut next);
            self.symbols = next;
            self.level += 1;
        }
        &self.symbols[..fib(i) as usize]
    }
}

/// `C_i^{(k)}`: `k` copies of `C_{i,1}` concatenated. Length `k * F_i`.
pub fn block_c(i: usize, k: u64) -> Result<Word, FibError> {
    if i == 0 || k == 0 {
        return Err(FibError::BlockParams { i, k });
    }
    if i > FIB_MAX_INDEX {
        return Err(FibError::TooLong { len: u128::MAX });
    }
    let len = k as u128 * fib(i) as u128;
    if len > MAX_WORD_LEN as u128 {
        return Err(FibError::TooLong { len });
    }
    let mut word = Word { alphabet: Alphabet::OneTwo, symbols: vec![1] };
    for _ in 1..i {
        word = sigma(&word)?;
    }
    let single = word.symbols;
    let mut symbols = Vec::with_capacity(len as usize);
    for _ in 0..k {
        symbols.extend_from_slice(&single);
    }
    Ok(Word { alphabet: Alphabet::OneTwo, symbols })
}

/// `D_i^{(k)}`: [`block_c`] with every symbol raised by one.
pub fn block_d(i: usize, k: u64) -> Result<Word, FibError> {
    block_c(i, k)?.shifted_up()
}

/// `⌊n·φ⌋` for `φ = (1 + √5) / 2`, as `(n + ⌊√(5n²)⌋) / 2` in exact integer
/// arithmetic.
pub fn floor_phi(n: u64) -> Result<u64, FibError> {
    if n > FLOOR_PHI_MAX {
        return Err(FibError::Overflow(n));
    }
    let n = n as u128;
    // n + √(5n²) is irrational for n > 0, so flooring the root first is exact.
    Ok(((n + (5 * n * n).isqrt()) / 2) as u64)
}

/// The `t`-th symbol of `C_{n,1}` without materializing the block:
/// `⌊(F_{n+1}+t+1)φ⌋ − ⌊(F_{n+1}+t)φ⌋`.
pub fn c1_element(n: usize, t: u64) -> Result<u8, FibError> {
    if n == 0 || n + 1 > FIB_MAX_INDEX {
        return Err(FibError::Index { n, t, len: 0 });
    }
    let len = fib(n);
    if t == 0 || t > len {
        return Err(FibError::Index { n, t, len });
    }
    let base = fib(n + 1) + t;
    Ok((floor_phi(base + 1)? - floor_phi(base)?) as u8)
}
