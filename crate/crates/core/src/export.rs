//! Byte-deterministic emitters for sequence rows and solved boards.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::sequences::SequenceRow;
use crate::solver::GrundyTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown format `{0}` (expected csv, json or text)")]
pub struct FormatError(String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Csv,
    Json,
    Text,
}

impl FromStr for Format {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(FormatError(other.to_owned())),
        }
    }
}

pub const SEQUENCE_HEADER: &str = "n,a_n,b_n,c_n,d_n";

/// Columns per line in the text layout.
const TEXT_COLUMNS: usize = 20;

pub fn sequences(format: Format, k: u64, rows: &[SequenceRow]) -> String {
    match format {
        Format::Csv => sequences_csv(rows),
        Format::Json => sequences_json(k, rows),
        Format::Text => sequences_text(k, rows),
    }
}

pub fn sequences_csv(rows: &[SequenceRow]) -> String {
    let mut out = String::with_capacity(16 * (rows.len() + 1));
    out.push_str(SEQUENCE_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r.n, r.a_n, r.b_n, r.c_n, r.d_n).unwrap();
    }
    out
}

#[derive(Serialize)]
struct SequenceDoc<'a> {
    k: u64,
    rows: &'a [SequenceRow],
}

pub fn sequences_json(k: u64, rows: &[SequenceRow]) -> String {
    let mut s = serde_json::to_string(&SequenceDoc { k, rows }).expect("rows serialize");
    s.push('\n');
    s
}

/// Values with their forward differences printed beneath, between neighbours.
pub fn sequences_text(k: u64, rows: &[SequenceRow]) -> String {
    let mut out = format!("k = {k}\n");
    if rows.is_empty() {
        return out;
    }
    let widest = rows.iter().map(|r| r.b_n.max(r.d_n)).max().unwrap_or(0);
    let w = widest.to_string().len() + 1;
    let a: Vec<u64> = rows.iter().map(|r| r.a_n).collect();
    let c: Vec<u64> = rows.iter().map(|r| r.c_n).collect();
    let b: Vec<u64> = rows.iter().map(|r| r.b_n).collect();
    let d: Vec<u64> = rows.iter().map(|r| r.d_n).collect();
    for (start, chunk) in rows.chunks(TEXT_COLUMNS).enumerate().map(|(i, ch)| (i * TEXT_COLUMNS, ch.len())) {
        let end = start + chunk;
        out.push('\n');
        line(&mut out, "n", &(start as u64 + 1..=end as u64).collect::<Vec<_>>(), w, 0);
        for (value, diff, vl, dl) in [(&a, &c, "a_n", "c_n"), (&b, &d, "b_n", "d_n")] {
            line(&mut out, vl, &value[start..end], w, 0);
            line(&mut out, dl, &diff[start..end], w, w);
        }
    }
    out
}

fn line(out: &mut String, label: &str, values: &[u64], w: usize, indent: usize) {
    write!(out, "{label:<4}|{:indent$}", "").unwrap();
    for v in values {
        write!(out, "{v:>width$}", width = 2 * w).unwrap();
    }
    let trimmed = out.trim_end_matches(' ').len();
    out.truncate(trimmed);
    out.push('\n');
}

/// Emitted board: JSON summary, CSV of P-positions, or a text listing.
pub fn solved(format: Format, table: &GrundyTable) -> String {
    match format {
        Format::Json => {
            let mut s = table.summary_json();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("x,y\n");
            for p in table.p_positions() {
                writeln!(out, "{},{}", p.x, p.y).unwrap();
            }
            out
        }
        Format::Text => {
            let ps = table.p_positions();
            let mut out = format!(
                "k = {}, N = {}, max Grundy value = {}, P-positions = {}\n",
                table.spec().k(),
                table.bound(),
                table.max_value(),
                ps.len()
            );
            for p in ps {
                writeln!(out, "{p}").unwrap();
            }
            out
        }
    }
}
