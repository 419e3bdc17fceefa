use proptest::prelude::*;
use std::collections::HashSet;

use wythoff_core::engine::{best_move, winning_moves};
use wythoff_core::export::{sequences_csv, solved, Format};
use wythoff_core::sequences::{a_nth, b_nth, classify, sequence_rows, PositionClass};
use wythoff_core::solver::build_table_with;
use wythoff_core::{build_table, is_terminal, moves, Execution, PPairStream, Position, TerminalSpec};

/// Pair rows outside the terminal set never share a row or a column.
#[test]
fn pair_p_rows_and_columns_are_unique() {
    for k in [0, 1, 2, 4, 7] {
        let mut stream = PPairStream::new(k);
        let pairs = stream.pairs_within(5_000);
        let mut xs = HashSet::new();
        let mut ys = HashSet::new();
        for (_, a, b) in pairs {
            for (x, y) in [(a, b), (b, a)] {
                assert!(xs.insert(x), "k={k}: column {x} repeats");
                assert!(ys.insert(y), "k={k}: row {y} repeats");
            }
        }
    }
}

/// Straight-line recomputation of the sequences from their definition: `a_n`
/// is the least integer above `k` not yet used, `b_n = a_n + n + k`.
fn mex_oracle(k: u64, count: usize) -> Vec<(u64, u64)> {
    let mut used = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let mut next = k + 1;
    for n in 1..=count as u64 {
        while used.contains(&next) {
            next += 1;
        }
        let (a, b) = (next, next + n + k);
        used.insert(a);
        used.insert(b);
        out.push((a, b));
    }
    out
}

#[test]
fn sequences_match_the_greedy_oracle() {
    for k in 1..=12 {
        let rows = sequence_rows(k, 3_000);
        for (row, (a, b)) in rows.iter().zip(mex_oracle(k, 3_000)) {
            assert_eq!((row.a_n, row.b_n), (a, b), "k={k} n={}", row.n);
            assert_eq!(row.d_n, row.c_n + 1);
        }
    }
}

#[test]
fn sequence_csv_small_k1() {
    let csv = sequences_csv(&sequence_rows(1, 5));
    let a: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(a, ["2", "3", "5", "7", "8"]);
    assert_eq!(sequences_csv(&sequence_rows(1, 0)), "n,a_n,b_n,c_n,d_n\n");
}

#[test]
fn solve_examples() {
    let json = solved(Format::Json, &build_table(TerminalSpec::new(5), 30).unwrap());
    assert!(json.contains("{\"x\":12,\"y\":6}"));
    let classical = build_table(TerminalSpec::CLASSICAL, 10).unwrap().p_positions();
    let expected = [(0, 0), (1, 2), (2, 1), (3, 5), (5, 3), (4, 7), (7, 4), (6, 10), (10, 6)];
    let want: Vec<Position> = {
        let mut v: Vec<Position> = expected.iter().map(|&p| p.into()).collect();
        v.sort();
        v
    };
    assert_eq!(classical, want);
    assert!(build_table(TerminalSpec::new(5), 3).is_err());
}

#[test]
fn execution_modes_are_bit_identical() {
    for k in [0, 3, 6] {
        let spec = TerminalSpec::new(k);
        let mut a = Vec::new();
        let mut b = Vec::new();
        build_table_with(spec, 150, Execution::Sequential).unwrap().write_dump(&mut a).unwrap();
        build_table_with(spec, 150, Execution::Parallel).unwrap().write_dump(&mut b).unwrap();
        assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classify_agrees_with_brute_force(k in 0u64..8, x in 0u64..90, y in 0u64..90) {
        let table = build_table(TerminalSpec::new(k), 90).unwrap();
        let class = classify(k, Position::new(x, y));
        prop_assert_eq!(class.is_p(), table.is_p(Position::new(x, y)));
        prop_assert_eq!(matches!(class, PositionClass::TerminalP), x + y <= k);
    }

    #[test]
    fn closed_form_pairs_are_p_positions(k in 1u64..20, m in 2u64..2_000_000) {
        let (a, b) = (a_nth(k, m).unwrap(), b_nth(k, m).unwrap());
        prop_assert_eq!(b, a + m + k);
        prop_assert_eq!(classify(k, Position::new(b, a)), PositionClass::PairP { index: m });
    }

    #[test]
    fn best_move_wins_or_is_absent(k in 0u64..6, x in 0u64..60, y in 0u64..60) {
        let spec = TerminalSpec::new(k);
        let p = Position::new(x, y);
        prop_assume!(!is_terminal(p, spec));
        let table = build_table(spec, 60).unwrap();
        let hints = winning_moves(&table, p, spec);
        match best_move(&table, p, spec).unwrap() {
            Some(q) => {
                prop_assert!(table.is_p(q));
                prop_assert!(hints.contains(&q));
                prop_assert!(moves(p, spec).any(|m| m == q));
            }
            None => {
                prop_assert!(table.is_p(p));
                prop_assert!(hints.is_empty());
            }
        }
    }
}
