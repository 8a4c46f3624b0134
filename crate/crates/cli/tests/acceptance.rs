//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fail.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lefvol_core::io::ComplexFile;
use lefvol_core::verify::{run, Budget, Suite, SuiteReport};
use lefvol_core::{
    fixed_point_witnesses, lefschetz_volumes, lefschetz_volumes_trace, AdmissiblePair, LefschetzVolumeVector,
    MonteCarloConfig,
};

const SEED: u64 = 42;
const EXACT: f64 = 1e-9;
const MINUTE: Duration = Duration::from_secs(60);

struct Outcome {
    ok: bool,
    detail: String,
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn fixture(name: &str) -> AdmissiblePair {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    ComplexFile::from_path(path).unwrap().pair(None).unwrap()
}

fn paths(pair: &AdmissiblePair) -> [LefschetzVolumeVector; 2] {
    let mc = MonteCarloConfig::default();
    [
        lefschetz_volumes(pair, &mc).unwrap(),
        lefschetz_volumes_trace(pair, &mc).unwrap(),
    ]
}

/// Checks `v_k ≈ want[k]` on both paths; returns the worst deviation.
fn worst(pair: &AdmissiblePair, want: &[f64]) -> f64 {
    paths(pair)
        .iter()
        .flat_map(|v| want.iter().enumerate().map(move |(k, w)| (v.get(k) - w).abs()))
        .fold(0.0, f64::max)
}

fn within(limit: Duration, elapsed: Duration) -> (bool, String) {
    (
        elapsed < limit,
        format!("{:.2}s of {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64()),
    )
}

fn suites(list: &[Suite], limit: Duration) -> Outcome {
    let start = Instant::now();
    let reports: Vec<SuiteReport> = list.iter().map(|s| run(*s, SEED, &Budget::default())).collect();
    let (fast, time) = within(limit, start.elapsed());
    let summary: Vec<String> = reports
        .iter()
        .map(|r| format!("{}: {} failures in {} cases", r.suite, r.failures.len(), r.cases))
        .collect();
    for r in reports.iter().filter(|r| !r.passed()) {
        eprintln!("{}", serde_json::to_string_pretty(r).unwrap());
    }
    outcome(
        fast && reports.iter().all(SuiteReport::passed),
        format!("{}; {time}", summary.join(", ")),
    )
}

fn example1() -> Outcome {
    let start = Instant::now();
    let pair = fixture("example1.json");
    let traces: Vec<i64> = (0..=2).map(|q| pair.chain_matrix(q).trace()).collect();
    let err = worst(&pair, &[0.0, 3.5, -(3f64.sqrt()) / 4.0]);
    let (fast, time) = within(Duration::from_secs(1), start.elapsed());
    outcome(
        traces == [3, 2, -1] && err <= EXACT && fast,
        format!("traces {traces:?}, max |Δv| {err:.1e}; {time}"),
    )
}

fn example2() -> Outcome {
    let start = Instant::now();
    let pair = fixture("example2.json");
    let err = worst(&pair, &[0.0, 0.0]);
    let witnesses = fixed_point_witnesses(&pair, 0).len();
    let (fast, time) = within(Duration::from_secs(1), start.elapsed());
    outcome(
        err <= EXACT && witnesses > 0 && fast,
        format!("max |v_0|,|v_1| {err:.1e}, {witnesses} fixed-point witnesses; {time}"),
    )
}

fn example3() -> Outcome {
    let start = Instant::now();
    let ex = worst(&fixture("example3_X.json"), &[1.0, -2.0]);
    let ey = worst(&fixture("example3_Y.json"), &[1.0, 0.0]);
    let (fast, time) = within(Duration::from_secs(1), start.elapsed());
    outcome(
        ex <= EXACT && ey <= EXACT && fast,
        format!("X max |Δv| {ex:.1e}, Y max |Δv| {ey:.1e}; {time}"),
    )
}

fn determinism() -> Outcome {
    let runs: Vec<_> = (0..2)
        .map(|_| {
            Command::new(env!("CARGO_BIN_EXE_lefvol"))
                .args(["verify", "--suite", "all", "--seed", "42", "--format", "json"])
                .env_remove("LEFVOL_SEED")
                .output()
                .expect("binary runs")
        })
        .collect();
    let identical = runs[0].stdout == runs[1].stdout && !runs[0].stdout.is_empty();
    let passed = runs.iter().all(|r| r.status.success());
    outcome(
        identical,
        format!(
            "{} bytes, {}; suites {}",
            runs[0].stdout.len(),
            if identical { "identical" } else { "different" },
            if passed { "all pass" } else { "have failures" }
        ),
    )
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("Example 1 traces and volumes", Box::new(example1)),
        ("Example 2 vanishing volumes with fixed points", Box::new(example2)),
        ("Example 3 subdivision", Box::new(example3)),
        (
            "direct and trace paths agree on 200 random pairs",
            Box::new(|| suites(&[Suite::TraceEquiv], Duration::from_secs(30))),
        ),
        (
            "additivity, simplex property, open decomposition",
            Box::new(|| suites(&[Suite::Additivity, Suite::SimplexProperty, Suite::OpenDecomp], MINUTE)),
        ),
        (
            "open-simplex intrinsic volumes, sign rule vs inclusion-exclusion",
            Box::new(|| suites(&[Suite::IntVolOpen], MINUTE)),
        ),
        ("Steiner tube volumes", Box::new(|| suites(&[Suite::Steiner], MINUTE))),
        (
            "vertex external angles sum to 1",
            Box::new(|| suites(&[Suite::VertexAngles], MINUTE)),
        ),
        ("isometry invariance", Box::new(|| suites(&[Suite::Invariance], MINUTE))),
        (
            "coefficient recovery",
            Box::new(|| suites(&[Suite::HadwigerFit], MINUTE)),
        ),
        (
            "deterministic reports for verify --suite all --seed 42",
            Box::new(determinism),
        ),
    ];
    let mut all_ok = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        all_ok &= o.ok;
        println!(
            "{} {:>2}. {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
