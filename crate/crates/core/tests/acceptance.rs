//! Acceptance suite: one PASS/FAIL line per criterion, tolerances and time
//! limits fixed below. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use wythoff_core::export::sequences_csv;
use wythoff_core::sequences::sequence_rows;
use wythoff_core::verify::{
    check_anchors_and_offset, check_block_counts, check_classical_beatty, check_closed_form, check_diagonal_lemma,
    check_partition, check_pn_partition, check_pset_equivalence, run_all, CheckKind, CheckReport, InjectedFault,
    VerifyConfig,
};

type Outcome = Result<String, String>;

fn require(report: CheckReport) -> Result<(), String> {
    if report.passed() {
        Ok(())
    } else {
        Err(report.to_json_line())
    }
}

fn criterion(id: u32, title: &str, limit: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let verdict = match outcome {
        Ok(detail) if elapsed <= limit => Ok(detail),
        Ok(detail) => Err(format!("{detail}; over time limit {limit:?}")),
        Err(e) => Err(e),
    };
    let ok = verdict.is_ok();
    let detail = verdict.unwrap_or_else(|e| e);
    println!(
        "{} criterion {id}: {title} [{:.3}s / limit {}s] {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn column(csv: &str, col: usize) -> Vec<u64> {
    csv.lines().skip(1).map(|l| l.split(',').nth(col).unwrap().parse().unwrap()).collect()
}

fn table_reproduction() -> Outcome {
    let csv = sequences_csv(&sequence_rows(5, 15));
    let a = column(&csv, 1);
    let b = column(&csv, 2);
    let want_a = [6, 7, 8, 9, 10, 11, 13, 15, 17, 19, 21, 23, 24, 26, 27];
    let want_b = [12, 14, 16, 18, 20, 22, 25, 28];
    if a != want_a || b[..8] != want_b {
        return Err(format!("a = {a:?}, b = {:?}", &b[..8]));
    }
    Ok("a_1..a_15 and b_1..b_8 exact".into())
}

fn board_equivalence() -> Outcome {
    for k in [1, 2, 3, 5, 8] {
        require(check_pset_equivalence(k, 200).map_err(|e| e.to_string())?)?;
        require(check_pn_partition(k, 200).map_err(|e| e.to_string())?)?;
    }
    Ok("k in {1,2,3,5,8}, N = 200: zero-Grundy set == P_k; P/N partition holds".into())
}

fn closed_form() -> Outcome {
    for k in 1..=10 {
        require(check_closed_form(k, 100_000).map_err(|e| e.to_string())?)?;
    }
    Ok("k in 1..=10, indices 2..=100000: zero mismatches".into())
}

fn partition() -> Outcome {
    for k in [1, 2, 5] {
        require(check_partition(k, 1_000_000).map_err(|e| e.to_string())?)?;
    }
    Ok("k in {1,2,5}: [k+1, 10^6] covered exactly once".into())
}

fn blocks_offset_anchors() -> Outcome {
    for k in [1, 2, 3, 5, 8] {
        require(check_block_counts(k, 25).map_err(|e| e.to_string())?)?;
        require(check_anchors_and_offset(k, 100_000).map_err(|e| e.to_string())?)?;
    }
    Ok("k in {1,2,3,5,8}: blocks i <= 25, offset and anchors to index 10^5".into())
}

fn diagonal() -> Outcome {
    for k in [1, 5] {
        require(check_diagonal_lemma(k, 500).map_err(|e| e.to_string())?)?;
    }
    Ok("k in {1,5}, b_n + h <= 500: zero escapes".into())
}

fn classical() -> Outcome {
    require(check_classical_beatty(300).map_err(|e| e.to_string())?)?;
    require(check_pn_partition(0, 300).map_err(|e| e.to_string())?)?;
    Ok("k = 0, N = 300: pairs == (floor(n phi), floor(n phi) + n)".into())
}

fn pn_partition_all_boards() -> Outcome {
    for k in [0, 1, 2, 3, 5, 8] {
        require(check_pn_partition(k, 200).map_err(|e| e.to_string())?)?;
    }
    Ok("every solved board (k in {0,1,2,3,5,8}, N = 200)".into())
}

fn falsifiability() -> Outcome {
    let base = VerifyConfig {
        board_ks: vec![0, 5],
        board_bound: 60,
        sequence_ks: vec![5],
        max_index: 20_000,
        partition_bound: 50_000,
        max_block: 15,
        diagonal_ks: vec![5],
        diagonal_bound: 120,
        ..VerifyConfig::default()
    };
    let clean = run_all(&base).map_err(|e| e.to_string())?;
    if let Some(r) = clean.iter().find(|r| !r.passed()) {
        return Err(format!("baseline fails: {}", r.to_json_line()));
    }
    let mut targets = Vec::new();
    for name in InjectedFault::FIXTURES {
        let fault = InjectedFault::fixture(name).map_err(|e| e.to_string())?;
        let target: CheckKind = fault.fault.target();
        let config = VerifyConfig { faults: vec![fault], ..base.clone() };
        let reports = run_all(&config).map_err(|e| e.to_string())?;
        let failed: Vec<&CheckReport> = reports.iter().filter(|r| !r.passed()).collect();
        match failed.as_slice() {
            [r] if r.check == target && r.counterexample.is_some() => targets.push(target.name()),
            _ => {
                let lines: Vec<String> = failed.iter().map(|r| r.to_json_line()).collect();
                return Err(format!("fixture {name}: expected exactly {target} to fail, got [{}]", lines.join(", ")));
            }
        }
    }
    Ok(format!("{} fixtures, each failing only {}", targets.len(), targets.join("/")))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "sequence tables for k = 5", secs(1), table_reproduction),
        criterion(2, "brute-force P set equals P_k", secs(30), board_equivalence),
        criterion(3, "closed form equals cumulative sums", secs(10), closed_form),
        criterion(4, "a and b partition the integers above k", secs(10), partition),
        criterion(5, "block counts, offset and anchors", secs(10), blocks_offset_anchors),
        criterion(6, "no diagonal move from a pair row reaches P_k", secs(10), diagonal),
        criterion(7, "classical Beatty pairs", secs(10), classical),
        criterion(8, "P/N partition on solved boards", secs(30), pn_partition_all_boards),
        criterion(9, "injected faults are caught", secs(30), falsifiability),
    ];
    if results.iter().all(|&ok| ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
