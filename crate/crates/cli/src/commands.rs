use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;

use lefvol_core::io::{read_map_file, ComplexFile, ObservationsFile, VertexAssignment};
use lefvol_core::valuations::{lefschetz_volumes_trace_with, lefschetz_volumes_with};
use lefvol_core::verify::{run_all, run_suite, Budget, SuiteReport};
use lefvol_core::{
    hadwiger_decompose, AdmissiblePair, Complex, MonteCarloConfig, ValuationError, VertexId, VolumeTable,
};
use serde::Serialize;

use crate::error::{CliError, RANK_DEFICIENT};
use crate::{ComputeArgs, DecomposeArgs, Format, VerifyArgs};

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

/// Parses `a:b,c:d` into an assignment.
fn parse_inline_map(text: &str) -> Result<VertexAssignment, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| match p.split_once(':') {
            Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
                Ok((VertexId::from(a.trim()), VertexId::from(b.trim())))
            }
            _ => Err(CliError::usage(format!(
                "cannot parse map entry {p:?}; expected `from:to`"
            ))),
        })
        .collect()
}

/// A map file or inline pairs; vertices without an entry are fixed.
fn resolve_map(arg: &str, complex: &Complex) -> Result<VertexAssignment, CliError> {
    let mut assignment = if Path::new(arg).is_file() {
        read_map_file(arg)?
    } else if arg.contains(':') {
        parse_inline_map(arg)?
    } else {
        return Err(CliError::usage(format!(
            "{arg:?} is neither a map file nor `from:to` pairs"
        )));
    };
    for v in complex.vertices() {
        assignment.entry(v.clone()).or_insert_with(|| v.clone());
    }
    Ok(assignment)
}

fn parse_k(text: &str, n: usize) -> Result<Vec<usize>, CliError> {
    if text == "all" {
        return Ok((0..=n).collect());
    }
    match text.parse::<usize>() {
        Ok(k) if k <= n => Ok(vec![k]),
        Ok(k) => Err(CliError::usage(format!("k = {k} exceeds the ambient dimension {n}"))),
        Err(_) => Err(CliError::usage(format!(
            "--k expects `all` or an integer, got {text:?}"
        ))),
    }
}

fn mc_config(samples: u64, seed: u64) -> Result<MonteCarloConfig, CliError> {
    if samples == 0 {
        return Err(CliError::usage("--mc-samples must be positive"));
    }
    Ok(MonteCarloConfig { samples, seed })
}

#[derive(Debug, Serialize)]
struct VolumeRow {
    k: usize,
    direct: f64,
    trace: f64,
    difference: f64,
    std_error: f64,
    exact: bool,
}

#[derive(Debug, Serialize)]
struct CoefficientRow {
    simplex: Vec<String>,
    c: i64,
}

#[derive(Debug, Serialize)]
struct ComputeReport {
    complex: String,
    ambient_dim: usize,
    map: BTreeMap<String, String>,
    mc: MonteCarloConfig,
    traces: Vec<i64>,
    volumes: Vec<VolumeRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<CoefficientRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    valuation: Option<f64>,
}

pub fn compute(args: &ComputeArgs) -> Result<ExitCode, CliError> {
    let file = ComplexFile::from_path(&args.complex)?;
    let complex = file.complex()?;
    let assignment = if args.identity {
        Some(complex.vertices().map(|v| (v.clone(), v.clone())).collect())
    } else {
        args.map.as_deref().map(|m| resolve_map(m, &complex)).transpose()?
    };
    let pair = file.pair(assignment.as_ref())?;
    let n = pair.ambient_dim();
    let ks = parse_k(&args.k, n)?;
    let mc = mc_config(args.mc_samples, args.seed)?;
    let table = VolumeTable::compute(&pair, &mc)?;
    let direct = lefschetz_volumes_with(&pair, &table);
    let trace = lefschetz_volumes_trace_with(&pair, &table);
    let volumes = ks
        .iter()
        .map(|&k| {
            let (d, t) = (direct.estimate(k), trace.estimate(k));
            VolumeRow {
                k,
                direct: d.value,
                trace: t.value,
                difference: d.value - t.value,
                std_error: d.std_error(),
                exact: d.provenance.is_exact(),
            }
        })
        .collect();
    let report = ComputeReport {
        complex: args.complex.display().to_string(),
        ambient_dim: n,
        map: pair
            .map()
            .vertex_map()
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        mc,
        traces: traces(&pair),
        volumes,
        coefficients: args.coefficients.then(|| coefficients(&pair)),
        valuation: args
            .valuation
            .as_ref()
            .map(|a| a.iter().enumerate().map(|(k, a)| a * direct.get(k)).sum()),
    };
    match args.format {
        Format::Json => print_json(&report),
        Format::Table => print_compute_table(&report),
    }
    Ok(ExitCode::SUCCESS)
}

fn traces(pair: &AdmissiblePair) -> Vec<i64> {
    let dim = pair.complex().dim().map_or(0, |d| d + 1);
    (0..dim).map(|q| pair.chain_matrix(q).trace()).collect()
}

fn coefficients(pair: &AdmissiblePair) -> Vec<CoefficientRow> {
    pair.complex()
        .iter()
        .map(|s| CoefficientRow {
            simplex: s.vertices().iter().map(ToString::to_string).collect(),
            c: pair.orientation_coefficient(s).expect("simplex of the pair's complex"),
        })
        .collect()
}

fn print_compute_table(r: &ComputeReport) {
    println!("complex: {} (R^{})", r.complex, r.ambient_dim);
    let traces: Vec<String> = r
        .traces
        .iter()
        .enumerate()
        .map(|(q, t)| format!("tr f_{q} = {t}"))
        .collect();
    println!("traces:  {}", traces.join(", "));
    println!(
        "{:>3}  {:>20}  {:>20}  {:>10}  {:>10}",
        "k", "direct", "trace", "difference", "std_error"
    );
    for v in &r.volumes {
        println!(
            "{:>3}  {:>20.12}  {:>20.12}  {:>10.2e}  {:>10}",
            v.k,
            v.direct,
            v.trace,
            v.difference,
            if v.exact {
                "exact".to_owned()
            } else {
                format!("{:.2e}", v.std_error)
            }
        );
    }
    if let Some(cs) = &r.coefficients {
        println!("coefficients c(f, x):");
        for c in cs {
            println!("  {{{}}}  {:+}", c.simplex.join(","), c.c);
        }
    }
    if let Some(v) = r.valuation {
        println!("valuation: {v:.12}");
    }
}

pub fn verify(args: &VerifyArgs) -> Result<ExitCode, CliError> {
    if args.mc_samples == 0 {
        return Err(CliError::usage("--mc-samples must be positive"));
    }
    let budget = Budget {
        cases: args.budget,
        mc_samples: args.mc_samples,
    };
    let reports: Vec<SuiteReport> = if args.suite == "all" {
        run_all(args.seed, &budget)
    } else {
        vec![run_suite(&args.suite, args.seed, &budget)?]
    };
    let reports: Vec<SuiteReport> = if args.timings {
        reports
    } else {
        reports.into_iter().map(SuiteReport::without_timing).collect()
    };
    match (args.format, reports.as_slice()) {
        (Format::Json, [single]) if args.suite != "all" => print_json(single),
        (Format::Json, _) => print_json(&reports),
        (Format::Table, _) => {
            for r in &reports {
                let time = r.elapsed_ms.map(|ms| format!("  {ms} ms")).unwrap_or_default();
                let status = if r.passed() { "PASS" } else { "FAIL" };
                println!(
                    "{status}  {:<16} cases {:>4}  failures {:>3}{time}",
                    r.suite,
                    r.cases,
                    r.failures.len()
                );
                for f in &r.failures {
                    println!(
                        "      case {} (seed {}): {} expected {} got {}",
                        f.case_id, f.case_seed, f.check, f.expected, f.got
                    );
                }
            }
        }
    }
    Ok(if reports.iter().all(SuiteReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

#[derive(Debug, Serialize)]
struct DecomposeReport {
    observations: usize,
    ambient_dim: usize,
    coefficients: Vec<f64>,
    residual_norm: f64,
    rank: usize,
    condition: f64,
    singular_values: Vec<f64>,
}

pub fn decompose(args: &DecomposeArgs) -> Result<ExitCode, CliError> {
    let file = ObservationsFile::from_path(&args.observations)?;
    let base = args.observations.parent().unwrap_or(Path::new("."));
    let samples = file.load_pairs(base)?;
    let Some((first, _)) = samples.first() else {
        return Err(CliError::usage("observations file lists no observations"));
    };
    let n = first.ambient_dim();
    let mc = mc_config(args.mc_samples, args.seed)?;
    match hadwiger_decompose(&samples, n, &mc) {
        Ok(d) => {
            let report = DecomposeReport {
                observations: samples.len(),
                ambient_dim: n,
                coefficients: d.spec.coefficients,
                residual_norm: d.residual_norm,
                rank: d.rank,
                condition: d.condition,
                singular_values: d.singular_values,
            };
            match args.format {
                Format::Json => print_json(&report),
                Format::Table => {
                    for (k, a) in report.coefficients.iter().enumerate() {
                        println!("a_{k} = {a:.12}");
                    }
                    println!(
                        "residual {:.3e}, rank {}, condition {:.3e}",
                        report.residual_norm, report.rank, report.condition
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(ValuationError::Underdetermined {
            rank,
            unknowns,
            null_space_dim,
        }) => {
            print_json(&serde_json::json!({
                "status": "underdetermined",
                "rank": rank,
                "unknowns": unknowns,
                "null_space_dim": null_space_dim,
            }));
            eprintln!("error: feature matrix has rank {rank} of {unknowns}; null space dimension {null_space_dim}");
            Ok(ExitCode::from(RANK_DEFICIENT))
        }
        Err(e) => Err(e.into()),
    }
}
