use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lefvol_core::io::ComplexFile;
use lefvol_core::verify::{generate_random_pair, RandomComplexConfig};
use lefvol_core::{lefschetz_volumes, AdmissiblePair, MonteCarloConfig};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn lefvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefvol"))
        .args(args)
        .env_remove("LEFVOL_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn volumes(report: &Value) -> Vec<f64> {
    report["volumes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| {
            assert!(v["difference"].as_f64().unwrap().abs() <= 1e-9);
            v["direct"].as_f64().unwrap()
        })
        .collect()
}

fn compute(args: &[&str]) -> Value {
    let mut all = vec!["compute", "--format", "json"];
    all.extend_from_slice(args);
    let out = lefvol(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    json(&out)
}

fn assert_close(got: &[f64], want: &[f64]) {
    assert_eq!(got.len(), want.len(), "{got:?}");
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= 1e-9, "{got:?} vs {want:?}");
    }
}

#[test]
fn compute_example1() {
    let r = compute(&["--complex", fixture("example1.json").to_str().unwrap()]);
    assert_close(&volumes(&r), &[0.0, 3.5, -(3f64.sqrt()) / 4.0]);
    assert_eq!(r["traces"], serde_json::json!([3, 2, -1]));
}

#[test]
fn compute_example1_identity() {
    let r = compute(&["--complex", fixture("example1.json").to_str().unwrap(), "--identity"]);
    assert_close(&volumes(&r)[..2], &[0.0, 4.5]);
}

#[test]
fn compute_example3_and_single_k() {
    let path = fixture("example3_X.json");
    let r = compute(&["--complex", path.to_str().unwrap()]);
    assert_close(&volumes(&r), &[1.0, -2.0]);
    let r = compute(&["--complex", path.to_str().unwrap(), "--k", "1"]);
    assert_close(&volumes(&r), &[-2.0]);
}

#[test]
fn inline_and_file_maps_override_the_fixture_map() {
    let path = fixture("example3_X.json");
    // swapping back to the identity: v_1 is the length
    let r = compute(&["--complex", path.to_str().unwrap(), "--map", "a:a"]);
    assert_close(&volumes(&r), &[1.0, 2.0]);
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("swap.json");
    std::fs::write(&map, r#"{"a": "b", "b": "a"}"#).unwrap();
    let r = compute(&["--complex", path.to_str().unwrap(), "--map", map.to_str().unwrap()]);
    assert_close(&volumes(&r), &[1.0, -2.0]);
}

#[test]
fn coefficients_and_valuation_are_reported() {
    let r = compute(&[
        "--complex",
        fixture("example1.json").to_str().unwrap(),
        "--coefficients",
        "--valuation",
        "1,2,-4",
    ]);
    assert_eq!(r["coefficients"].as_array().unwrap().len(), 12);
    let expected = 2.0 * 3.5 + 4.0 * 3f64.sqrt() / 4.0;
    assert!((r["valuation"].as_f64().unwrap() - expected).abs() < 1e-9);
    let table = lefvol(&["compute", "--complex", fixture("example1.json").to_str().unwrap()]);
    assert!(table.status.success());
    assert!(String::from_utf8_lossy(&table.stdout).contains("tr f_2 = -1"));
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let code = |args: &[&str]| lefvol(args).status.code();

    let malformed = write(d, "bad.json", "{ not json");
    assert_eq!(code(&["compute", "--complex", malformed.to_str().unwrap()]), Some(2));
    assert_eq!(
        code(&["compute", "--complex", d.join("missing.json").to_str().unwrap()]),
        Some(2)
    );
    let x = fixture("example3_X.json");
    assert_eq!(
        code(&["compute", "--complex", x.to_str().unwrap(), "--k", "7"]),
        Some(2)
    );
    assert_eq!(
        code(&["compute", "--complex", x.to_str().unwrap(), "--map", "nonsense"]),
        Some(2)
    );

    let bad_map = write(
        d,
        "badmap.json",
        r#"{"ambient_dim": 1, "vertices": {"a": [0.0], "b": [1.0], "c": [3.0]},
            "maximal_simplices": [["a", "b"]], "map": {"a": "a", "b": "c", "c": "c"}}"#,
    );
    assert_eq!(code(&["compute", "--complex", bad_map.to_str().unwrap()]), Some(3));
    assert_eq!(
        code(&["compute", "--complex", x.to_str().unwrap(), "--map", "a:zz"]),
        Some(3)
    );

    let degenerate = write(
        d,
        "flat.json",
        r#"{"ambient_dim": 2, "vertices": {"a": [0.0, 0.0], "b": [1.0, 1.0], "c": [2.0, 2.0]},
            "maximal_simplices": [["a", "b", "c"]]}"#,
    );
    assert_eq!(code(&["compute", "--complex", degenerate.to_str().unwrap()]), Some(4));
}

#[test]
fn verify_paper_examples_and_unknown_suite() {
    let out = lefvol(&["verify", "--suite", "paper_examples"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["suite"], "paper_examples");
    assert_eq!(r["failures"], serde_json::json!([]));
    assert_eq!(r["elapsed_ms"], Value::Null);
    assert_eq!(lefvol(&["verify", "--suite", "nosuch"]).status.code(), Some(2));
}

#[test]
fn verify_steiner_seed_7() {
    let out = lefvol(&["verify", "--suite", "steiner", "--seed", "7", "--timings"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(&out);
    assert_eq!(r["cases"], 9);
    assert!(r["elapsed_ms"].is_u64());
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_lefvol"))
            .args(["verify", "--suite", "boundary", "--budget", "5"])
            .env("LEFVOL_SEED", seed)
            .output()
            .unwrap()
    };
    assert_eq!(json(&run("17"))["seed"], 17);
}

/// Ten random planar pairs (half with identity maps) written to `dir`, with
/// their volume vectors.
fn observation_corpus(dir: &Path) -> Vec<(String, Vec<f64>)> {
    (0..10u64)
        .map(|j| {
            let pair = generate_random_pair(&RandomComplexConfig {
                max_vertices: 7,
                max_dim: 2,
                ambient_dim: 2,
                edge_length_scale: 1.0,
                seed: 1000 + j,
            })
            .unwrap();
            let pair = if j % 2 == 0 {
                AdmissiblePair::identity(pair.complex().clone(), pair.embedding().clone()).unwrap()
            } else {
                pair
            };
            let name = format!("pair{j}.json");
            std::fs::write(dir.join(&name), ComplexFile::from_pair(&pair).to_json()).unwrap();
            let v = lefschetz_volumes(&pair, &MonteCarloConfig::default()).unwrap();
            (name, v.values)
        })
        .collect()
}

fn write_observations(dir: &Path, rows: &[(String, f64)]) -> PathBuf {
    let obs: Vec<Value> = rows
        .iter()
        .map(|(c, v)| serde_json::json!({"complex": c, "value": v}))
        .collect();
    write(
        dir,
        "observations.json",
        &serde_json::json!({ "observations": obs }).to_string(),
    )
}

fn decompose(path: &Path) -> Output {
    lefvol(&[
        "decompose",
        "--observations",
        path.to_str().unwrap(),
        "--format",
        "json",
    ])
}

#[test]
fn decompose_recovers_planted_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = observation_corpus(dir.path());
    for (planted, noise) in [([0.0, 1.0, 0.0], 0.0), ([2.0, 3.0, 0.0], 1e-8)] {
        let rows: Vec<(String, f64)> = corpus
            .iter()
            .enumerate()
            .map(|(i, (name, v))| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                (
                    name.clone(),
                    v.iter().zip(planted).map(|(x, a)| x * a).sum::<f64>() + sign * noise,
                )
            })
            .collect();
        let out = decompose(&write_observations(dir.path(), &rows));
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let r = json(&out);
        let got: Vec<f64> = r["coefficients"]
            .as_array()
            .unwrap()
            .iter()
            .map(|a| a.as_f64().unwrap())
            .collect();
        for (g, w) in got.iter().zip(planted) {
            assert!((g - w).abs() <= 1e-6, "{got:?} vs {planted:?}");
        }
        assert_eq!(r["rank"], 3);
    }
}

#[test]
fn colinear_observations_exit_5() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = observation_corpus(dir.path());
    let rows = vec![(corpus[0].0.clone(), 1.0), (corpus[0].0.clone(), 1.0)];
    let out = decompose(&write_observations(dir.path(), &rows));
    assert_eq!(out.status.code(), Some(5));
    let r = json(&out);
    assert_eq!(r["status"], "underdetermined");
    assert!(r["null_space_dim"].as_u64().unwrap() >= 2);
}
