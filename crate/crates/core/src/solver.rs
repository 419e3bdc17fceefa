//! Retrograde Sprague–Grundy analysis on the board `0..=N × 0..=N`.
//!
//! Moves strictly decrease `x + y`, so cells are evaluated one anti-diagonal
//! at a time; every cell of an anti-diagonal depends only on earlier ones and
//! the cells of a single anti-diagonal are computed concurrently. Move targets
//! of an on-board cell are on-board, so the bounded table is exact.

use std::io::{self, Read, Write};

use serde::Serialize;
use thiserror::Error;

use crate::exec::Execution;
use crate::game::{Position, TerminalSpec};

/// Tables larger than this are refused.
pub const MAX_TABLE_BYTES: u128 = 1 << 30;

const DUMP_MAGIC: &[u8; 8] = b"WYTHOFFG";
const DUMP_VERSION: u8 = 1;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("board bound {bound} is smaller than k={k}")]
    BoundBelowK { bound: u64, k: u64 },
    #[error("a {what} for bound {bound} needs {bytes} bytes, over the {MAX_TABLE_BYTES}-byte budget")]
    Capacity { what: &'static str, bound: u64, bytes: u128 },
    #[error("malformed table dump: {0}")]
    Dump(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Minimum excluded value: the least non-negative integer not in `values`.
pub fn mex<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    let mut seen: Vec<bool> = Vec::new();
    for v in values {
        let v = v as usize;
        if v >= seen.len() {
            seen.resize(v + 1, false);
        }
        seen[v] = true;
    }
    seen.iter().position(|&s| !s).unwrap_or(seen.len()) as u32
}

/// Bytes per stored Grundy value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(into = "u8")]
pub enum ValueWidth {
    U8,
    U16,
    U32,
}

impl ValueWidth {
    /// Grundy values never exceed the move count `x + y + min(x, y) <= 3N`.
    pub fn for_bound(bound: u64) -> Self {
        match 3 * bound as u128 {
            0..=0xFF => ValueWidth::U8,
            0x100..=0xFFFF => ValueWidth::U16,
            _ => ValueWidth::U32,
        }
    }

    pub fn bytes(self) -> u8 {
        match self {
            ValueWidth::U8 => 1,
            ValueWidth::U16 => 2,
            ValueWidth::U32 => 4,
        }
    }

    fn from_bytes(b: u8) -> Option<Self> {
        match b {
            1 => Some(ValueWidth::U8),
            2 => Some(ValueWidth::U16),
            4 => Some(ValueWidth::U32),
            _ => None,
        }
    }
}

impl From<ValueWidth> for u8 {
    fn from(w: ValueWidth) -> u8 {
        w.bytes()
    }
}

trait Cell: Copy + Default + Send + Sync + 'static {
    fn get(self) -> u32;
    fn put(v: u32) -> Self;
}

macro_rules! cell {
    ($t:ty) => {
        impl Cell for $t {
            #[inline]
            fn get(self) -> u32 {
                self as u32
            }
            #[inline]
            fn put(v: u32) -> Self {
                v as $t
            }
        }
    };
}
cell!(u8);
cell!(u16);
cell!(u32);

#[derive(Debug, Clone, PartialEq, Eq)]
enum Store {
    U8(Vec<u8>),
    U16(Vec<u16>),
    U32(Vec<u32>),
}

/// Grundy values of every cell of a bounded board, `values[x][y]` stored at
/// `x * (N + 1) + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrundyTable {
    spec: TerminalSpec,
    bound: u64,
    side: usize,
    store: Store,
}

fn side_for(bound: u64, cell_bytes: u128, what: &'static str) -> Result<usize, SolverError> {
    let side = bound as u128 + 1;
    let bytes = side * side * cell_bytes / 8;
    if bytes > MAX_TABLE_BYTES {
        return Err(SolverError::Capacity { what, bound, bytes });
    }
    Ok(side as usize)
}

fn check_bound(spec: TerminalSpec, bound: u64) -> Result<(), SolverError> {
    if bound < spec.k() {
        return Err(SolverError::BoundBelowK { bound, k: spec.k() });
    }
    Ok(())
}

/// Cells `(x, s - x)` of anti-diagonal `s` that lie on the board.
#[inline]
fn diagonal_xs(s: usize, bound: usize) -> std::ops::RangeInclusive<usize> {
    s.saturating_sub(bound)..=s.min(bound)
}

fn grundy_at<C: Cell>(cells: &[C], side: usize, x: usize, y: usize, seen: &mut Vec<bool>) -> C {
    seen.clear();
    seen.resize(x + y + x.min(y) + 1, false);
    for u in 0..x {
        seen[cells[u * side + y].get() as usize] = true;
    }
    let column = &cells[x * side..x * side + y];
    for c in column {
        seen[c.get() as usize] = true;
    }
    for t in 1..=x.min(y) {
        seen[cells[(x - t) * side + (y - t)].get() as usize] = true;
    }
    C::put(seen.iter().position(|&s| !s).expect("mex is bounded by the move count") as u32)
}

fn fill<C: Cell>(spec: TerminalSpec, side: usize, exec: Execution) -> Vec<C> {
    let bound = side - 1;
    let mut cells = vec![C::default(); side * side];
    let k = spec.k() as usize;
    for s in (k + 1)..=(2 * bound) {
        let xs = diagonal_xs(s, bound);
        let values = {
            let cells = &cells;
            exec.map_range(xs.clone(), Vec::new, |seen, x| grundy_at(cells, side, x, s - x, seen))
        };
        for (x, v) in xs.zip(values) {
            cells[x * side + (s - x)] = v;
        }
    }
    cells
}

/// Solves the board `0..=bound` in both coordinates.
pub fn build_table(spec: TerminalSpec, bound: u64) -> Result<GrundyTable, SolverError> {
    build_table_with(spec, bound, Execution::default())
}

pub fn build_table_with(spec: TerminalSpec, bound: u64, exec: Execution) -> Result<GrundyTable, SolverError> {
    check_bound(spec, bound)?;
    let width = ValueWidth::for_bound(bound);
    let side = side_for(bound, 8 * width.bytes() as u128, "Grundy table")?;
    let store = match width {
        ValueWidth::U8 => Store::U8(fill(spec, side, exec)),
        ValueWidth::U16 => Store::U16(fill(spec, side, exec)),
        ValueWidth::U32 => Store::U32(fill(spec, side, exec)),
    };
    Ok(GrundyTable { spec, bound, side, store })
}

#[derive(Serialize)]
struct Summary<'a> {
    k: u64,
    bound: u64,
    value_width: u8,
    max_grundy: u32,
    p_count: usize,
    p_positions: &'a [Position],
}

impl GrundyTable {
    #[inline]
    pub fn spec(&self) -> TerminalSpec {
        self.spec
    }

    #[inline]
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn width(&self) -> ValueWidth {
        match self.store {
            Store::U8(_) => ValueWidth::U8,
            Store::U16(_) => ValueWidth::U16,
            Store::U32(_) => ValueWidth::U32,
        }
    }

    #[inline]
    fn raw(&self, i: usize) -> u32 {
        match &self.store {
            Store::U8(v) => v[i] as u32,
            Store::U16(v) => v[i] as u32,
            Store::U32(v) => v[i],
        }
    }

    /// Grundy value of an on-board cell. Panics off the board.
    #[inline]
    pub fn value(&self, x: u64, y: u64) -> u32 {
        assert!(x <= self.bound && y <= self.bound, "({x},{y}) is off the board 0..={}", self.bound);
        self.raw(x as usize * self.side + y as usize)
    }

    pub fn get(&self, p: Position) -> Option<u32> {
        p.within(self.bound).then(|| self.value(p.x, p.y))
    }

    #[inline]
    pub fn is_p(&self, p: Position) -> bool {
        self.value(p.x, p.y) == 0
    }

    pub fn max_value(&self) -> u32 {
        (0..self.side * self.side).map(|i| self.raw(i)).max().unwrap_or(0)
    }

    /// All zero-valued cells, ordered by `x` then `y`.
    pub fn p_positions(&self) -> Vec<Position> {
        let side = self.side;
        (0..side * side)
            .filter(|&i| self.raw(i) == 0)
            .map(|i| Position::new((i / side) as u64, (i % side) as u64))
            .collect()
    }

    /// `zero[x * (N + 1) + y]` is true on P-positions.
    pub fn zero_mask(&self) -> Vec<bool> {
        (0..self.side * self.side).map(|i| self.raw(i) == 0).collect()
    }

    /// Portable summary: parameters plus the sorted P-position list.
    pub fn summary_json(&self) -> String {
        let ps = self.p_positions();
        serde_json::to_string(&Summary {
            k: self.spec.k(),
            bound: self.bound,
            value_width: self.width().bytes(),
            max_grundy: self.max_value(),
            p_count: ps.len(),
            p_positions: &ps,
        })
        .expect("summary serializes")
    }

    /// Binary dump: `WYTHOFFG`, version byte, width byte, `k` and `N` as
    /// little-endian u64, then every value little-endian with `x` outer and
    /// `y` inner.
    pub fn write_dump<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(DUMP_MAGIC)?;
        w.write_all(&[DUMP_VERSION, self.width().bytes()])?;
        w.write_all(&self.spec.k().to_le_bytes())?;
        w.write_all(&self.bound.to_le_bytes())?;
        match &self.store {
            Store::U8(v) => w.write_all(v)?,
            Store::U16(v) => {
                let bytes: Vec<u8> = v.iter().flat_map(|c| c.to_le_bytes()).collect();
                w.write_all(&bytes)?
            }
            Store::U32(v) => {
                let bytes: Vec<u8> = v.iter().flat_map(|c| c.to_le_bytes()).collect();
                w.write_all(&bytes)?
            }
        }
        w.flush()
    }

    pub fn read_dump<R: Read>(mut r: R) -> Result<Self, SolverError> {
        let mut header = [0u8; 26];
        r.read_exact(&mut header)?;
        if &header[..8] != DUMP_MAGIC {
            return Err(SolverError::Dump("bad magic".into()));
        }
        if header[8] != DUMP_VERSION {
            return Err(SolverError::Dump(format!("unsupported version {}", header[8])));
        }
        let width = ValueWidth::from_bytes(header[9])
            .ok_or_else(|| SolverError::Dump(format!("bad value width {}", header[9])))?;
        let k = u64::from_le_bytes(header[10..18].try_into().expect("8 bytes"));
        let bound = u64::from_le_bytes(header[18..26].try_into().expect("8 bytes"));
        let spec = TerminalSpec::new(k);
        check_bound(spec, bound)?;
        let side = side_for(bound, 8 * width.bytes() as u128, "Grundy table")?;
        let mut body = Vec::new();
        r.read_to_end(&mut body)?;
        if body.len() != side * side * width.bytes() as usize {
            return Err(SolverError::Dump(format!(
                "expected {} value bytes, got {}",
                side * side * width.bytes() as usize,
                body.len()
            )));
        }
        let store = match width {
            ValueWidth::U8 => Store::U8(body),
            ValueWidth::U16 => Store::U16(body.chunks_exact(2).map(|c| u16::from_le_bytes([c[0], c[1]])).collect()),
            ValueWidth::U32 => {
                Store::U32(body.chunks_exact(4).map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect())
            }
        };
        Ok(GrundyTable { spec, bound, side, store })
    }
}

/// P/N status only, one bit per cell.
///
/// A non-terminal cell is P exactly when no P cell lies to its left in its
/// row, below it in its column, or below-left on its diagonal. Sweeping
/// anti-diagonals in order, three flag arrays record whether each row,
/// column and diagonal already holds a P cell, so the whole board costs
/// `O(N²)` instead of `O(N³)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PTable {
    spec: TerminalSpec,
    bound: u64,
    side: usize,
    bits: Vec<u64>,
}

pub fn build_p_table(spec: TerminalSpec, bound: u64) -> Result<PTable, SolverError> {
    check_bound(spec, bound)?;
    let side = side_for(bound, 1, "P bitboard")?;
    let n = side - 1;
    let mut bits = vec![0u64; (side * side).div_ceil(64)];
    let mut row = vec![false; side];
    let mut col = vec![false; side];
    // diagonal x - y, shifted by n
    let mut diag = vec![false; 2 * side];
    let k = spec.k() as usize;
    for s in 0..=(2 * n) {
        for x in diagonal_xs(s, n) {
            let y = s - x;
            let p = s <= k || !(row[y] || col[x] || diag[x + n - y]);
            if p {
                let i = x * side + y;
                bits[i / 64] |= 1 << (i % 64);
                row[y] = true;
                col[x] = true;
                diag[x + n - y] = true;
            }
        }
    }
    Ok(PTable { spec, bound, side, bits })
}

impl PTable {
    #[inline]
    pub fn spec(&self) -> TerminalSpec {
        self.spec
    }

    #[inline]
    pub fn bound(&self) -> u64 {
        self.bound
    }

    #[inline]
    pub fn is_p(&self, p: Position) -> bool {
        assert!(p.within(self.bound), "{p} is off the board 0..={}", self.bound);
        let i = p.x as usize * self.side + p.y as usize;
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// All P cells, ordered by `x` then `y`.
    pub fn p_positions(&self) -> Vec<Position> {
        let side = self.side;
        let mut out = Vec::new();
        for (w, &word) in self.bits.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let i = w * 64 + word.trailing_zeros() as usize;
                out.push(Position::new((i / side) as u64, (i % side) as u64));
                word &= word - 1;
            }
        }
        out
    }
}
