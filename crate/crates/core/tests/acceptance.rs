//! Acceptance run: executes every claim once, groups the records into the
//! sixteen acceptance criteria and prints one line per criterion.
//!
//! Criteria 11 and 16 are known to fail (see the notes in the README); the
//! process exits nonzero only if some other criterion fails.

use curvkit::cli::report::Status;
use curvkit::cli::reproduce::{run_timed, Ctx, TimedRecord};
use std::process::ExitCode;
use std::time::{Duration, Instant};

const KNOWN_UNMET: [u8; 2] = [11, 16];

const TITLES: [&str; 16] = [
    "sphere moments reproduce D(m,4) = 3m/(m+2)",
    "D(2,3,4) = 3/2 by search and by the explicit plane",
    "circle designs and the constant-ratio plane",
    "design search feasible at (3,12), infeasible at (2,4)",
    "Clifford torus curvature equals the L4/L2 ratio",
    "equivariant design torus has curvature sqrt(1.5)",
    "Veronese curvatures in the ball and the sphere",
    "round torus and tube over the Clifford torus",
    "torus-by-torus bounds",
    "rolled bands are expanding",
    "normal exponential maps are expanding",
    "average curvature identity and bounds",
    "Gauss formula on spheres and flat tori",
    "tori in the unit ball respect sqrt(3m/(m+2))",
    "scalar-curvature closed forms and Bessel brackets",
    "full reproduce run",
];

fn runtime_limit(group: u8) -> Option<Duration> {
    match group {
        1 => Some(Duration::from_secs(10)),
        2 => Some(Duration::from_secs(5)),
        _ => None,
    }
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn judge_group(group: u8, records: &[TimedRecord]) -> Verdict {
    let mine: Vec<&TimedRecord> = records.iter().filter(|r| r.group == group).collect();
    let elapsed: Duration = mine.iter().map(|r| r.elapsed).sum();
    let mut problems: Vec<String> = mine
        .iter()
        .filter(|r| r.record.status == Status::Fail)
        .map(|r| match (&r.record.error, r.record.computed) {
            (Some(e), _) => format!("{}: {e}", r.record.claim_id),
            (None, Some(v)) => format!("{} = {v}", r.record.claim_id),
            (None, None) => r.record.claim_id.clone(),
        })
        .collect();
    if mine.is_empty() {
        problems.push("no claims".into());
    }
    if let Some(limit) = runtime_limit(group) {
        if elapsed > limit {
            problems.push(format!("took {elapsed:.2?}, limit {limit:?}"));
        }
    }
    if group == 15 && !mine.iter().any(|r| r.record.claim_id == "bessel-j0-digits" && r.record.status == Status::Flagged) {
        problems.push("j0 digits not flagged".into());
    }
    let summary = format!("{} claims, {elapsed:.2?}", mine.len());
    Verdict {
        pass: problems.is_empty(),
        detail: if problems.is_empty() { summary } else { format!("{summary}; {}", problems.join("; ")) },
    }
}

fn judge_full(first: &[TimedRecord], total: Duration, ctx: &Ctx) -> Verdict {
    let mut problems = Vec::new();
    let a = serde_json::to_string(&curvkit::cli::report::Report::new(
        ctx.seed,
        first.iter().map(|r| r.record.clone()).collect(),
    ))
    .expect("json");
    let b = serde_json::to_string(&curvkit::cli::reproduce::reproduce(ctx, &[])).expect("json");
    if a != b {
        problems.push("second run differs".to_string());
    }
    if total > Duration::from_secs(300) {
        problems.push(format!("took {total:.2?}"));
    }
    let failed: Vec<&str> =
        first.iter().filter(|r| r.record.status == Status::Fail).map(|r| r.record.claim_id.as_str()).collect();
    if !failed.is_empty() {
        problems.push(format!("failed: {}", failed.join(", ")));
    }
    let mut flagged: Vec<&str> =
        first.iter().filter(|r| r.record.status == Status::Flagged).map(|r| r.record.claim_id.as_str()).collect();
    flagged.sort();
    if flagged != ["bessel-j0-digits", "rotation-torus-curvature"] {
        problems.push(format!("flagged: {flagged:?}"));
    }
    let summary = format!("{} claims, {total:.2?}, deterministic={}", first.len(), a == b);
    Verdict {
        pass: problems.is_empty(),
        detail: if problems.is_empty() { summary } else { format!("{summary}; {}", problems.join("; ")) },
    }
}

fn main() -> ExitCode {
    let ctx = Ctx { seed: 0, design_file: None };
    let start = Instant::now();
    let records = run_timed(&ctx, &[]);
    let total = start.elapsed();

    let mut unexpected = 0;
    for group in 1..=16u8 {
        let v = if group == 16 { judge_full(&records, total, &ctx) } else { judge_group(group, &records) };
        let known = KNOWN_UNMET.contains(&group);
        let tag = match (v.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        if !v.pass && !known {
            unexpected += 1;
        }
        println!("criterion {group:>2} {tag:<12} {}  [{}]", TITLES[group as usize - 1], v.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criterion(s) failed unexpectedly");
        ExitCode::FAILURE
    }
}
