//! The individual suites. Each case records failures on a [`Case`] instead of
//! returning early, so one report lists every violated check.

use std::fmt::Display;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::random::{generate_random_pair, random_invariant_subcomplex, random_self_map, random_simplex};
use super::{Budget, CaseFailure, RandomComplexConfig, Suite};
use crate::complex::{Complex, Simplex};
use crate::geometry::{
    apply_isometry, external_angle, intrinsic_volumes, open_intrinsic_volumes,
    open_intrinsic_volumes_by_inclusion_exclusion, sample_isometry, steiner_polynomial, tube_volume_mc, Embedding,
};
use crate::io::ComplexFile;
use crate::mc::{child_seed, MonteCarloConfig};
use crate::simplicial_map::{chain_matrix, AdmissiblePair, SelfMap};
use crate::valuations::{
    fixed_point_witnesses, hadwiger_decompose, lefschetz_volume_on, lefschetz_volumes_trace_with,
    lefschetz_volumes_with, open_valuation_with, ValuationError, ValuationSpec, VolumeTable,
};

const EXACT_TOL: f64 = 1e-9;
const INVARIANCE_TOL: f64 = 1e-6;
const HADWIGER_TOL: f64 = 1e-6;
const ISOMETRIES_PER_PAIR: u64 = 100;
const HADWIGER_OBSERVATIONS: u64 = 10;
const HADWIGER_DRAWS: u64 = 20;

const STEINER_RADII: [f64; 3] = [0.1, 0.5, 1.0];
pub(super) const STEINER_CASES: usize = 3 * STEINER_RADII.len();
const PLANTED: [[f64; 3]; 4] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [2.0, 3.0, 0.0], [-1.0, 0.5, 4.0]];
pub(super) const HADWIGER_CASES: usize = PLANTED.len() + 1;
pub(super) const PAPER_CASES: usize = 9;

const EXAMPLE1: &str = include_str!("../../../../fixtures/example1.json");
const EXAMPLE2: &str = include_str!("../../../../fixtures/example2.json");
const EXAMPLE3_X: &str = include_str!("../../../../fixtures/example3_X.json");
const EXAMPLE3_Y: &str = include_str!("../../../../fixtures/example3_Y.json");

pub(super) struct Case {
    id: usize,
    seed: u64,
    budget: Budget,
    inputs: Value,
    failures: Vec<CaseFailure>,
}

impl Case {
    pub(super) fn new(id: usize, seed: u64, budget: &Budget) -> Self {
        Self {
            id,
            seed,
            budget: *budget,
            inputs: Value::Null,
            failures: Vec::new(),
        }
    }

    pub(super) fn into_failures(self) -> Vec<CaseFailure> {
        self.failures
    }

    fn mc(&self) -> MonteCarloConfig {
        MonteCarloConfig {
            samples: self.budget.mc_samples,
            seed: self.seed,
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(child_seed(self.seed, stream))
    }

    fn record_pair(&mut self, cfg: &RandomComplexConfig, pair: &AdmissiblePair) {
        self.inputs = json!({"config": cfg, "pair": ComplexFile::from_pair(pair)});
    }

    fn fail(&mut self, check: impl Into<String>, expected: Value, got: Value, tolerance: f64) {
        self.failures.push(CaseFailure {
            case_id: self.id,
            case_seed: self.seed,
            check: check.into(),
            inputs: self.inputs.clone(),
            expected,
            got,
            tolerance,
        });
    }

    fn close(&mut self, check: impl Into<String>, got: f64, expected: f64, tol: f64) {
        // NaN compares false and so fails
        let within = (got - expected).abs() <= tol;
        if !within {
            self.fail(check, json!(expected), json!(got), tol);
        }
    }

    fn equal<T: PartialEq + Serialize>(&mut self, check: impl Into<String>, got: T, expected: T) {
        if got != expected {
            self.fail(check, json!(expected), json!(got), 0.0);
        }
    }

    fn error(&mut self, check: impl Into<String>, err: impl Display) {
        self.fail(check, Value::Null, json!(err.to_string()), 0.0);
    }

    /// Unwraps `r`, recording the error as a failure.
    fn ok<T, E: Display>(&mut self, check: &str, r: Result<T, E>) -> Option<T> {
        r.map_err(|e| self.error(check, e)).ok()
    }

    /// The random corpus: complexes of dimension at most 3 with at most 12
    /// vertices, in `R^1`, `R^2` or `R^3` (weighted toward `R^3`).
    fn corpus_pair(&mut self) -> Option<AdmissiblePair> {
        let ambient = [1, 2, 3, 3][(self.seed % 4) as usize];
        let cfg = RandomComplexConfig {
            max_vertices: 12,
            max_dim: ambient,
            ambient_dim: ambient,
            edge_length_scale: 1.0,
            seed: self.seed,
        };
        self.inputs = json!({"config": cfg});
        let pair = self.ok("generate", generate_random_pair(&cfg))?;
        self.record_pair(&cfg, &pair);
        Some(pair)
    }

    fn volume_table(&mut self, pair: &AdmissiblePair) -> Option<VolumeTable> {
        let mc = self.mc();
        self.ok("volume table", VolumeTable::compute(pair, &mc))
    }
}

pub(super) fn dispatch(suite: Suite, case: &mut Case) {
    match suite {
        Suite::Boundary => boundary(case),
        Suite::Chain => chain(case),
        Suite::Additivity => additivity(case),
        Suite::SimplexProperty => simplex_property(case),
        Suite::OpenDecomp => open_decomp(case),
        Suite::IntVolOpen => int_vol_open(case),
        Suite::Invariance => invariance(case),
        Suite::Steiner => steiner(case),
        Suite::VertexAngles => vertex_angles(case),
        Suite::TraceEquiv => trace_equiv(case),
        Suite::HadwigerFit => hadwiger_fit(case),
        Suite::PaperExamples => paper_examples(case),
    }
}

fn euler_characteristic(x: &Complex) -> i64 {
    (0..=x.dim().unwrap_or(0))
        .map(|q| {
            if q % 2 == 0 {
                x.count(q) as i64
            } else {
                -(x.count(q) as i64)
            }
        })
        .sum()
}

fn random_subcomplex(x: &Complex, rng: &mut ChaCha8Rng) -> Complex {
    use rand::seq::IndexedRandom;
    use rand::Rng;
    let all: Vec<&Simplex> = x.iter().collect();
    let n = rng.random_range(0..=3);
    Complex::closure((0..n).filter_map(|_| all.choose(rng).map(|s| (*s).clone())))
}

fn boundary(case: &mut Case) {
    let Some(pair) = case.corpus_pair() else { return };
    let x = pair.complex();
    let dim = x.dim().unwrap_or(0);
    for q in 2..=dim {
        let dd = x.boundary_matrix(q - 1).matrix * x.boundary_matrix(q).matrix;
        if dd.iter().any(|v| *v != 0) {
            case.fail(
                format!("boundary squared, q={q}"),
                json!(0),
                json!(dd.iter().copied().collect::<Vec<_>>()),
                0.0,
            );
        }
    }
    let reclosed = Complex::closure(x.iter().cloned());
    if &reclosed != x {
        case.fail("closure is idempotent", json!(x.len()), json!(reclosed.len()), 0.0);
    }
    for s in x.iter() {
        if let Some(face) = s.faces().find(|f| !x.contains(f)) {
            case.fail("closed under faces", json!(s.to_string()), json!(face.to_string()), 0.0);
        }
    }
    let mut rng = case.rng(1);
    let a = random_subcomplex(x, &mut rng);
    let b = random_subcomplex(x, &mut rng);
    let (union, meet) = (a.union(&b), a.intersection(&b));
    for q in 0..=dim {
        case.equal(
            format!("inclusion-exclusion of {q}-simplex counts"),
            union.count(q) + meet.count(q),
            a.count(q) + b.count(q),
        );
    }
    case.equal(
        "euler characteristic is additive",
        euler_characteristic(&union) + euler_characteristic(&meet),
        euler_characteristic(&a) + euler_characteristic(&b),
    );
}

fn as_rows(m: &DMatrix<i64>) -> Vec<Vec<i64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn chain(case: &mut Case) {
    let Some(pair) = case.corpus_pair() else { return };
    let x = pair.complex();
    let f = pair.map();
    let dim = x.dim().unwrap_or(0);
    let mut rng = case.rng(1);
    let Some(g) = case.ok("second map", random_self_map(x, &mut rng)) else {
        return;
    };
    let fg = f.compose(&g);
    let id = SelfMap::identity(x);
    for q in 0..=dim {
        let fq = chain_matrix(f, x, q).matrix;
        if q > 0 {
            let d = x.boundary_matrix(q).matrix;
            let lhs = &d * &fq;
            let rhs = chain_matrix(f, x, q - 1).matrix * &d;
            case.equal(
                format!("chain map commutes with boundary, q={q}"),
                as_rows(&lhs),
                as_rows(&rhs),
            );
        }
        let coefficients: i64 = x
            .simplices(q)
            .iter()
            .filter_map(|s| pair.orientation_coefficient(s).ok())
            .sum();
        case.equal(format!("trace equals coefficient sum, q={q}"), fq.trace(), coefficients);
        let composed = chain_matrix(&fg, x, q).matrix;
        let product = &fq * chain_matrix(&g, x, q).matrix;
        case.equal(
            format!("chain maps compose, q={q}"),
            as_rows(&composed),
            as_rows(&product),
        );
        let n = x.count(q);
        case.equal(
            format!("identity chain map, q={q}"),
            as_rows(&chain_matrix(&id, x, q).matrix),
            as_rows(&DMatrix::<i64>::identity(n, n)),
        );
    }
}

fn additivity(case: &mut Case) {
    let Some(pair) = case.corpus_pair() else { return };
    let Some(table) = case.volume_table(&pair) else { return };
    let mut rng = case.rng(1);
    let a = random_invariant_subcomplex(&pair, &mut rng);
    let b = random_invariant_subcomplex(&pair, &mut rng);
    for (name, sub) in [("A", &a), ("B", &b)] {
        if let Err(e) = pair.restrict(sub) {
            case.error(format!("{name} is invariant"), e);
        }
    }
    let (union, meet) = (a.union(&b), a.intersection(&b));
    for k in 0..=pair.ambient_dim() {
        let v = |sub: &Complex| lefschetz_volume_on(&pair, &table, sub, k);
        let (Some(va), Some(vb), Some(vu), Some(vi), Some(ve)) = (
            case.ok("v(A)", v(&a)),
            case.ok("v(B)", v(&b)),
            case.ok("v(A∪B)", v(&union)),
            case.ok("v(A∩B)", v(&meet)),
            case.ok("v(∅)", v(&Complex::empty())),
        ) else {
            return;
        };
        case.close(
            format!("additivity, k={k}"),
            vu.value + vi.value,
            va.value + vb.value,
            EXACT_TOL,
        );
        case.close(format!("empty complex, k={k}"), ve.value, 0.0, 0.0);
    }
}

fn simplex_property(case: &mut Case) {
    let Some(pair) = case.corpus_pair() else { return };
    let Some(table) = case.volume_table(&pair) else { return };
    let Some(id_pair) = case.ok(
        "identity pair",
        AdmissiblePair::identity(pair.complex().clone(), pair.embedding().clone()),
    ) else {
        return;
    };
    let mc = case.mc();
    for x in pair.complex().iter() {
        let Some(c) = case.ok("coefficient", pair.orientation_coefficient(x)) else {
            return;
        };
        let Some(open_mu) = case.ok(
            "open intrinsic volumes",
            open_intrinsic_volumes(x, pair.embedding(), &mc),
        ) else {
            return;
        };
        for k in 0..=pair.ambient_dim() {
            let r = (|| -> Result<_, ValuationError> {
                Ok((
                    lefschetz_volume_on(&pair, &table, &Complex::of_simplex(x), k)?,
                    lefschetz_volume_on(&pair, &table, &Complex::boundary_of(x), k)?,
                    open_valuation_with(&id_pair, &table, x, k)?,
                ))
            })();
            let Some((closed, bdry, id_open)) = case.ok("valuations", r) else {
                return;
            };
            case.close(
                format!("v(f, closure {x}) = c v(id, open {x}) + v(f, boundary), k={k}"),
                closed.value,
                c as f64 * id_open.value + bdry.value,
                EXACT_TOL,
            );
            let mu = open_mu.estimate(k);
            case.close(
                format!("v(id, open {x}) is the open intrinsic volume, k={k}"),
                id_open.value,
                mu.value,
                EXACT_TOL + 3.0 * (mu.std_error() + id_open.std_error()),
            );
        }
    }
}

fn open_decomp(case: &mut Case) {
    let Some(pair) = case.corpus_pair() else { return };
    let Some(table) = case.volume_table(&pair) else { return };
    let total = lefschetz_volumes_with(&pair, &table);
    for k in 0..=pair.ambient_dim() {
        let mut sum = 0.0;
        for x in pair.complex().iter() {
            let Some(v) = case.ok("open valuation", open_valuation_with(&pair, &table, x, k)) else {
                return;
            };
            sum += v.value;
        }
        case.close(format!("sum over open simplices, k={k}"), sum, total.get(k), EXACT_TOL);
    }
}

fn trace_equiv(case: &mut Case) {
    let Some(pair) = case.corpus_pair() else { return };
    let Some(table) = case.volume_table(&pair) else { return };
    let direct = lefschetz_volumes_with(&pair, &table);
    let trace = lefschetz_volumes_trace_with(&pair, &table);
    for k in 0..=pair.ambient_dim() {
        // both paths read the same table, so Monte Carlo noise cancels
        case.close(format!("direct = trace, k={k}"), direct.get(k), trace.get(k), EXACT_TOL);
    }
}

/// Simplex dimension for the geometric suites, cycling through 1..=4.
fn cycled_simplex(case: &mut Case) -> Option<(Simplex, Embedding)> {
    let dim = 1 + case.id % 4;
    let mut rng = case.rng(1);
    let (s, e) = case.ok("generate simplex", random_simplex(dim, &mut rng))?;
    case.inputs = json!({"dim": dim, "points": e.coords()});
    Some((s, e))
}

fn int_vol_open(case: &mut Case) {
    let Some((s, e)) = cycled_simplex(case) else { return };
    let mc = case.mc();
    let (Some(sign), Some(recursive)) = (
        case.ok("sign rule", open_intrinsic_volumes(&s, &e, &mc)),
        case.ok(
            "inclusion-exclusion",
            open_intrinsic_volumes_by_inclusion_exclusion(&s, &e, &mc),
        ),
    ) else {
        return;
    };
    for k in 0..=s.dim() {
        let (a, b) = (sign.estimate(k), recursive.estimate(k));
        let tol = EXACT_TOL.max(3.0 * (a.std_error() + b.std_error()));
        case.close(format!("open mu_{k}"), a.value, b.value, tol);
    }
}

fn vertex_angles(case: &mut Case) {
    let Some((s, e)) = cycled_simplex(case) else { return };
    let mc = case.mc();
    let mut sum = 0.0;
    let mut var = 0.0;
    for v in s.vertices() {
        let Some(g) = case.ok(
            "external angle",
            external_angle(&Simplex::vertex(v.clone()), &s, &e, &mc),
        ) else {
            return;
        };
        sum += g.value;
        var += g.std_error().powi(2);
    }
    case.close("sum of vertex angles", sum, 1.0, EXACT_TOL + 3.0 * var.sqrt());
}

fn invariance(case: &mut Case) {
    let Some(pair) = case.corpus_pair() else { return };
    let mc = case.mc();
    let Some(table) = case.volume_table(&pair) else { return };
    let reference = lefschetz_volumes_with(&pair, &table);
    let n = pair.ambient_dim();
    for j in 0..ISOMETRIES_PER_PAIR {
        let phi_seed = child_seed(case.seed, j + 1);
        let phi = sample_isometry(n, phi_seed, 10.0);
        let Some(moved) = case.ok(
            "moved pair",
            pair.with_embedding(apply_isometry(pair.embedding(), &phi)),
        ) else {
            continue;
        };
        let Some(t) = case.ok("volume table", VolumeTable::compute(&moved, &mc)) else {
            continue;
        };
        let v = lefschetz_volumes_with(&moved, &t);
        for k in 0..=n {
            let tol = INVARIANCE_TOL + 3.0 * (reference.estimate(k).std_error() + v.estimate(k).std_error());
            case.close(
                format!("isometry seed {phi_seed}, k={k}"),
                v.get(k),
                reference.get(k),
                tol,
            );
        }
    }
}

/// Unit segment and unit equilateral triangle in the plane, unit regular
/// tetrahedron in space.
fn steiner_shape(index: usize) -> (Simplex, Embedding) {
    let h = 3f64.sqrt() / 2.0;
    let pts: Vec<(&str, Vec<f64>)> = match index {
        0 => vec![("a", vec![0.0, 0.0]), ("b", vec![1.0, 0.0])],
        1 => vec![("a", vec![0.0, 0.0]), ("b", vec![1.0, 0.0]), ("c", vec![0.5, h])],
        _ => vec![
            ("a", vec![0.0, 0.0, 0.0]),
            ("b", vec![1.0, 0.0, 0.0]),
            ("c", vec![0.5, h, 0.0]),
            ("d", vec![0.5, h / 3.0, (2.0f64 / 3.0).sqrt()]),
        ],
    };
    let n = pts[0].1.len();
    let s = Simplex::new(pts.iter().map(|(l, _)| *l)).expect("distinct labels");
    let e = Embedding::from_points(n, pts.iter().map(|(l, p)| (*l, p.clone()))).expect("valid points");
    (s, e)
}

fn steiner(case: &mut Case) {
    let (s, e) = steiner_shape(case.id / STEINER_RADII.len());
    let rho = STEINER_RADII[case.id % STEINER_RADII.len()];
    case.inputs = json!({"points": e.coords(), "rho": rho, "samples": case.budget.mc_samples});
    let mc = case.mc();
    let Some(mu) = case.ok("intrinsic volumes", intrinsic_volumes(&s, &e, &mc)) else {
        return;
    };
    let poly = steiner_polynomial(&mu, e.ambient_dim(), rho);
    let Some(tube) = case.ok(
        "tube volume",
        tube_volume_mc(&s, &e, rho, case.budget.mc_samples, case.seed),
    ) else {
        return;
    };
    let sigma = (tube.std_error.powi(2) + poly.std_error().powi(2)).sqrt();
    case.close(
        "tube volume vs Steiner polynomial",
        tube.volume_estimate,
        poly.value,
        3.0 * sigma,
    );
}

/// Ten random observations in the plane. Half use the identity map so that
/// `v_2` is generically nonzero.
fn hadwiger_observations(case: &mut Case, draw: u64) -> Option<Vec<AdmissiblePair>> {
    let mut pairs = Vec::new();
    for j in 0..HADWIGER_OBSERVATIONS {
        let cfg = RandomComplexConfig {
            max_vertices: 8,
            max_dim: 2,
            ambient_dim: 2,
            edge_length_scale: 1.0,
            seed: child_seed(case.seed, draw * HADWIGER_OBSERVATIONS + j),
        };
        let pair = case.ok("generate", generate_random_pair(&cfg))?;
        let pair = if j % 2 == 0 {
            case.ok(
                "identity",
                AdmissiblePair::identity(pair.complex().clone(), pair.embedding().clone()),
            )?
        } else {
            pair
        };
        pairs.push(pair);
    }
    case.inputs = json!({"draw": draw, "pairs": pairs.iter().map(ComplexFile::from_pair).collect::<Vec<_>>()});
    Some(pairs)
}

fn hadwiger_fit(case: &mut Case) {
    let mc = case.mc();
    if case.id == PLANTED.len() {
        let Some(pairs) = hadwiger_observations(case, 0) else {
            return;
        };
        // Three copies of one pair: rank at most 1.
        let samples: Vec<(AdmissiblePair, f64)> = (0..3).map(|_| (pairs[0].clone(), 1.0)).collect();
        match hadwiger_decompose(&samples, 2, &mc) {
            Err(ValuationError::Underdetermined { .. }) => {}
            other => case.fail(
                "rank deficiency rejected",
                json!("underdetermined"),
                json!(format!("{other:?}")),
                0.0,
            ),
        }
        return;
    }
    let planted = ValuationSpec::new(PLANTED[case.id].to_vec());
    // A random design can miss a direction (e.g. no fixed triangle anywhere);
    // such draws are redrawn rather than counted as failures.
    for draw in 0..HADWIGER_DRAWS {
        let Some(pairs) = hadwiger_observations(case, draw) else {
            return;
        };
        let mut samples = Vec::new();
        for pair in pairs {
            let Some(table) = case.volume_table(&pair) else { return };
            let v = lefschetz_volumes_with(&pair, &table);
            let observed: f64 = planted.coefficients.iter().enumerate().map(|(k, a)| a * v.get(k)).sum();
            samples.push((pair, observed));
        }
        match hadwiger_decompose(&samples, 2, &mc) {
            Ok(fit) => {
                for (k, (got, want)) in fit.spec.coefficients.iter().zip(&planted.coefficients).enumerate() {
                    case.close(format!("a_{k}"), *got, *want, HADWIGER_TOL);
                }
                return;
            }
            Err(ValuationError::Underdetermined { .. }) if draw + 1 < HADWIGER_DRAWS => continue,
            Err(e) => return case.error("decompose", e),
        }
    }
}

fn fixture_pair(case: &mut Case, name: &str, text: &str) -> Option<AdmissiblePair> {
    let file = case.ok(name, ComplexFile::from_json(text, name))?;
    case.inputs = json!({"fixture": name});
    case.ok(name, file.pair(None))
}

fn fixture_volumes(case: &mut Case, name: &str, text: &str, identity: bool) -> Option<[Vec<f64>; 2]> {
    let mut pair = fixture_pair(case, name, text)?;
    if identity {
        pair = case.ok(
            "identity",
            AdmissiblePair::identity(pair.complex().clone(), pair.embedding().clone()),
        )?;
    }
    let table = case.volume_table(&pair)?;
    Some([
        lefschetz_volumes_with(&pair, &table).values,
        lefschetz_volumes_trace_with(&pair, &table).values,
    ])
}

fn expect_volumes(case: &mut Case, label: &str, got: &[Vec<f64>; 2], want: &[f64]) {
    for (path, values) in ["direct", "trace"].iter().zip(got) {
        for (k, w) in want.iter().enumerate() {
            case.close(format!("{label} {path} v_{k}"), values[k], *w, EXACT_TOL);
        }
    }
}

fn paper_examples(case: &mut Case) {
    let root3_4 = 3f64.sqrt() / 4.0;
    match case.id {
        0 => {
            let Some(pair) = fixture_pair(case, "example1", EXAMPLE1) else {
                return;
            };
            let traces: Vec<i64> = (0..=2).map(|q| pair.chain_matrix(q).trace()).collect();
            case.equal("example 1 traces", traces, vec![3, 2, -1]);
        }
        1 => {
            let Some(v) = fixture_volumes(case, "example1", EXAMPLE1, false) else {
                return;
            };
            expect_volumes(case, "example 1", &v, &[0.0, 3.5, -root3_4]);
        }
        2 => {
            let Some(v) = fixture_volumes(case, "example1", EXAMPLE1, true) else {
                return;
            };
            expect_volumes(case, "example 1 identity", &v, &[0.0, 4.5, root3_4]);
        }
        3 => {
            let Some(pair) = fixture_pair(case, "example1", EXAMPLE1) else {
                return;
            };
            let x = pair.complex();
            case.equal(
                "figure 1 simplex counts",
                [x.count(0), x.count(1), x.count(2)],
                [5, 6, 1],
            );
        }
        4 => {
            let Some(v) = fixture_volumes(case, "example2", EXAMPLE2, false) else {
                return;
            };
            expect_volumes(case, "example 2", &v, &[0.0, 0.0, 0.0]);
        }
        5 => {
            let Some(pair) = fixture_pair(case, "example2", EXAMPLE2) else {
                return;
            };
            let witnesses = fixed_point_witnesses(&pair, 0);
            if witnesses.is_empty() {
                case.fail("example 2 has fixed-point witnesses", json!("nonempty"), json!([]), 0.0);
            }
        }
        6 => {
            let Some(v) = fixture_volumes(case, "example3_X", EXAMPLE3_X, false) else {
                return;
            };
            expect_volumes(case, "example 3 X", &v, &[1.0, -2.0]);
        }
        7 => {
            let Some(v) = fixture_volumes(case, "example3_Y", EXAMPLE3_Y, false) else {
                return;
            };
            expect_volumes(case, "example 3 Y", &v, &[1.0, 0.0]);
        }
        _ => {
            let Some(pair) = fixture_pair(case, "example1", EXAMPLE1) else {
                return;
            };
            let Some(face) = pair.complex().simplices(2).first().cloned() else {
                return;
            };
            let mc = case.mc();
            let Some(mu) = case.ok("intrinsic volumes", intrinsic_volumes(&face, pair.embedding(), &mc)) else {
                return;
            };
            for (k, want) in [1.0, 1.5, root3_4].into_iter().enumerate() {
                case.close(format!("example 1 triangle mu_{k}"), mu.get(k), want, EXACT_TOL);
            }
        }
    }
}
