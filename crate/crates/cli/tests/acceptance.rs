//! One line per acceptance criterion. Exits nonzero on any unexpected result.

use std::time::{Duration, Instant};

use cubicwa_cli::suites::{criterion, CRITERIA};
use cubicwa_cli::{Format, Report, RunConfig};

/// Verdicts that fail because the published bound does not hold; see the
/// project notes. They print as FAIL but do not fail the run, and an
/// unexpected pass does.
const EXPECTED_FAILURES: &[(u32, &str, &str)] = &[
    (4, "q=13", "contains-line"),
    (4, "q=13", "contains-conic"),
];

const SEED: u64 = 0;
const DETERMINISM_LIMIT: Duration = Duration::from_secs(3600);

fn field_tag(r: &Report) -> String {
    r.config
        .iter()
        .find(|(k, _)| k == "q")
        .map(|(_, v)| format!("q={v}"))
        .unwrap_or_default()
}

fn run_all(workers: usize) -> Vec<(u32, Duration, Vec<Report>)> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().unwrap();
    let cfg = RunConfig {
        seed: SEED,
        ..RunConfig::default()
    };
    CRITERIA
        .iter()
        .map(|c| {
            let started = Instant::now();
            let reports = pool
                .install(|| criterion(c.id, &cfg))
                .unwrap_or_else(|e| panic!("criterion {} aborted: {e}", c.id));
            (c.id, started.elapsed(), reports)
        })
        .collect()
}

fn main() {
    let mut unexpected = 0;
    let first = run_all(2);
    for (c, (id, elapsed, reports)) in CRITERIA.iter().zip(&first) {
        let mut failing = Vec::new();
        let mut expected = Vec::new();
        let mut notes = Vec::new();
        for r in reports {
            let tag = field_tag(r);
            for v in &r.verdicts {
                let line = format!("{} {tag} {}: {}", r.command, v.name, v.detail);
                if r.census_only {
                    notes.push(format!("census {line}"));
                    continue;
                }
                let xfail = EXPECTED_FAILURES.iter().any(|&(i, t, n)| i == *id && t == tag && n == v.name);
                match (v.pass, xfail) {
                    (true, false) => {}
                    (false, true) => expected.push(line),
                    (false, false) => failing.push(line),
                    (true, true) => failing.push(format!("{line} (expected to fail, passed)")),
                }
            }
        }
        let in_time = *elapsed < c.limit;
        let pass = failing.is_empty() && expected.is_empty() && in_time;
        println!(
            "criterion {id}: {} {} ({:.1}s, limit {}s)",
            if pass { "PASS" } else { "FAIL" },
            c.title,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        for l in &failing {
            println!("    fail: {l}");
        }
        for l in &expected {
            println!("    fail (known bound gap): {l}");
        }
        for l in &notes {
            println!("    {l}");
        }
        if !in_time {
            println!("    fail: time limit exceeded");
        }
        unexpected += !failing.is_empty() as usize + !in_time as usize;
    }

    let started = Instant::now();
    let second = run_all(1);
    let render = |runs: &[(u32, Duration, Vec<Report>)]| -> Vec<String> {
        runs.iter()
            .flat_map(|(_, _, rs)| rs.iter().flat_map(|r| [r.render(Format::Records), r.render(Format::Rows)]))
            .collect()
    };
    let (a, b) = (render(&first), render(&second));
    let differing: Vec<usize> = (0..a.len().max(b.len())).filter(|&i| a.get(i) != b.get(i)).collect();
    let elapsed = started.elapsed();
    let identical = differing.is_empty() && elapsed < DETERMINISM_LIMIT;
    println!(
        "criterion 10: {} byte-identical reports on rerun with 1 worker instead of 2 ({} documents, {} differ) ({:.1}s, limit {}s)",
        if identical { "PASS" } else { "FAIL" },
        a.len(),
        differing.len(),
        elapsed.as_secs_f64(),
        DETERMINISM_LIMIT.as_secs()
    );
    unexpected += !identical as usize;

    if unexpected > 0 {
        println!("acceptance: {unexpected} unexpected failures");
        std::process::exit(1);
    }
    println!("acceptance: no unexpected failures");
}
