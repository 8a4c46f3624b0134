//! Lefschetz volumes and valuations on admissible pairs.
//!
//! `v_k(f, X) = Σ_x (-1)^{dim x - k} c(f, x) μ_k(x)` is computed two ways: as
//! the direct sum over simplices, and through the chain maps as
//! `Σ_q (-1)^{q-k} tr(f_q V_{q,k})` with `V_{q,k}` the diagonal matrix of the
//! `μ_k` of the `q`-simplices.

mod hadwiger;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, Simplex};
use crate::geometry::{intrinsic_volumes, GeometryError, IntrinsicVolumeVector};
use crate::mc::{Estimate, MonteCarloConfig, Provenance};
use crate::simplicial_map::{coefficient, AdmissiblePair, MapError};

pub use hadwiger::{hadwiger_decompose, hadwiger_decompose_features, Decomposition};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValuationError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("volume index {k} exceeds ambient dimension {n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("{0} is not a subcomplex of the pair's complex")]
    NotASubcomplex(Simplex),
    #[error(
        "underdetermined: feature matrix has rank {rank} of {unknowns} unknowns \
         (null space dimension {null_space_dim})"
    )]
    Underdetermined {
        rank: usize,
        unknowns: usize,
        null_space_dim: usize,
    },
    #[error("observation set is malformed: {0}")]
    BadObservations(String),
}

/// Closed intrinsic volumes of every simplex of a complex, aligned with the
/// canonical per-dimension bases.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeTable {
    by_dim: Vec<Vec<IntrinsicVolumeVector>>,
}

impl VolumeTable {
    pub fn compute(pair: &AdmissiblePair, mc: &MonteCarloConfig) -> Result<Self, ValuationError> {
        let x = pair.complex();
        let e = pair.embedding();
        let by_dim = (0..x.dim().map_or(0, |d| d + 1))
            .map(|q| {
                x.simplices(q)
                    .par_iter()
                    .map(|s| intrinsic_volumes(s, e, mc))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { by_dim })
    }

    pub fn get(&self, x: &Complex, s: &Simplex) -> Option<&IntrinsicVolumeVector> {
        let i = x.index_of(s)?;
        self.by_dim.get(s.dim())?.get(i)
    }

    /// `V_{q,k}`.
    pub fn diagonal(&self, q: usize, k: usize) -> DiagonalVolumeMatrix {
        let layer = self.by_dim.get(q).map(Vec::as_slice).unwrap_or(&[]);
        DiagonalVolumeMatrix {
            q,
            k,
            entries: layer.iter().map(|m| m.estimate(k)).collect(),
        }
    }
}

/// `μ_k(x)` for each `q`-simplex `x` in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalVolumeMatrix {
    pub q: usize,
    pub k: usize,
    pub entries: Vec<Estimate>,
}

impl DiagonalVolumeMatrix {
    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.entries.len(),
            self.entries.iter().map(|e| e.value),
        ))
    }
}

/// `(v_0, …, v_n)` for an admissible pair in `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LefschetzVolumeVector {
    pub values: Vec<f64>,
    pub provenance: Vec<Provenance>,
}

impl LefschetzVolumeVector {
    pub fn get(&self, k: usize) -> f64 {
        self.values.get(k).copied().unwrap_or(0.0)
    }

    pub fn estimate(&self, k: usize) -> Estimate {
        Estimate {
            value: self.values[k],
            provenance: self.provenance[k],
        }
    }

    fn from_estimates(est: Vec<Estimate>) -> Self {
        Self {
            values: est.iter().map(|e| e.value).collect(),
            provenance: est.iter().map(|e| e.provenance).collect(),
        }
    }
}

/// Coefficients `a_0, …, a_n` of `v = Σ a_k v_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValuationSpec {
    pub coefficients: Vec<f64>,
}

impl ValuationSpec {
    pub fn new(coefficients: Vec<f64>) -> Self {
        Self { coefficients }
    }
}

fn check_index(pair: &AdmissiblePair, k: usize) -> Result<(), ValuationError> {
    let n = pair.ambient_dim();
    if k > n {
        return Err(ValuationError::IndexOutOfRange { k, n });
    }
    Ok(())
}

fn sign(exp: i64) -> f64 {
    if exp.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Direct sum over the simplices of `sub` (a subcomplex of the pair's
/// complex); `f` need not map `sub` into itself.
fn direct_sum(pair: &AdmissiblePair, table: &VolumeTable, sub: &Complex, k: usize) -> Estimate {
    let x = pair.complex();
    let terms: Vec<(f64, Estimate)> = sub
        .iter()
        .filter(|s| s.dim() >= k)
        .filter_map(|s| {
            let c = coefficient(pair.map(), s);
            (c != 0).then(|| {
                let mu = table.get(x, s).expect("subcomplex simplex").estimate(k);
                (sign(s.dim() as i64 - k as i64) * c as f64, mu)
            })
        })
        .collect();
    Estimate {
        value: terms.iter().map(|(c, m)| c * m.value).sum(),
        provenance: Provenance::combine(terms.iter().map(|(c, m)| (*c, &m.provenance))),
    }
}

fn trace_sum(pair: &AdmissiblePair, table: &VolumeTable, k: usize) -> Estimate {
    let Some(dim) = pair.complex().dim() else {
        return Estimate::exact(0.0);
    };
    let mut value = 0.0;
    let mut terms: Vec<(f64, Provenance)> = Vec::new();
    for q in 0..=dim {
        let fq = pair.chain_matrix(q).matrix;
        let vqk = table.diagonal(q, k);
        let s = sign(q as i64 - k as i64);
        value += s * (fq.map(|v| v as f64) * vqk.to_matrix()).trace();
        let diag = fq.diagonal();
        terms.extend(
            diag.iter()
                .zip(&vqk.entries)
                .filter(|(c, _)| **c != 0)
                .map(|(c, e)| (s * *c as f64, e.provenance)),
        );
    }
    Estimate {
        value,
        provenance: Provenance::combine(terms.iter().map(|(c, p)| (*c, p))),
    }
}

fn check_subcomplex(pair: &AdmissiblePair, sub: &Complex) -> Result<(), ValuationError> {
    match sub.iter().find(|s| !pair.complex().contains(s)) {
        Some(s) => Err(ValuationError::NotASubcomplex(s.clone())),
        None => Ok(()),
    }
}

/// `v_k(f, X)` by the direct sum over simplices.
pub fn lefschetz_volume(pair: &AdmissiblePair, k: usize, mc: &MonteCarloConfig) -> Result<Estimate, ValuationError> {
    check_index(pair, k)?;
    let table = VolumeTable::compute(pair, mc)?;
    Ok(direct_sum(pair, &table, pair.complex(), k))
}

/// `v_k(f, X)` by the trace formula over chain maps.
pub fn lefschetz_volume_trace(
    pair: &AdmissiblePair,
    k: usize,
    mc: &MonteCarloConfig,
) -> Result<Estimate, ValuationError> {
    check_index(pair, k)?;
    let table = VolumeTable::compute(pair, mc)?;
    Ok(trace_sum(pair, &table, k))
}

/// All of `v_0, …, v_n` by the direct sum.
pub fn lefschetz_volumes(
    pair: &AdmissiblePair,
    mc: &MonteCarloConfig,
) -> Result<LefschetzVolumeVector, ValuationError> {
    let table = VolumeTable::compute(pair, mc)?;
    Ok(lefschetz_volumes_with(pair, &table))
}

pub fn lefschetz_volumes_with(pair: &AdmissiblePair, table: &VolumeTable) -> LefschetzVolumeVector {
    LefschetzVolumeVector::from_estimates(
        (0..=pair.ambient_dim())
            .map(|k| direct_sum(pair, table, pair.complex(), k))
            .collect(),
    )
}

/// All of `v_0, …, v_n` by the trace formula.
pub fn lefschetz_volumes_trace(
    pair: &AdmissiblePair,
    mc: &MonteCarloConfig,
) -> Result<LefschetzVolumeVector, ValuationError> {
    let table = VolumeTable::compute(pair, mc)?;
    Ok(lefschetz_volumes_trace_with(pair, &table))
}

pub fn lefschetz_volumes_trace_with(pair: &AdmissiblePair, table: &VolumeTable) -> LefschetzVolumeVector {
    LefschetzVolumeVector::from_estimates((0..=pair.ambient_dim()).map(|k| trace_sum(pair, table, k)).collect())
}

/// `v_k(f, A)` for a subcomplex `A` of the pair's complex, with `f` viewed as
/// a simplicial map `A → X`.
pub fn lefschetz_volume_on(
    pair: &AdmissiblePair,
    table: &VolumeTable,
    sub: &Complex,
    k: usize,
) -> Result<Estimate, ValuationError> {
    check_index(pair, k)?;
    check_subcomplex(pair, sub)?;
    Ok(direct_sum(pair, table, sub, k))
}

/// `v_k(f, open x) = v_k(f, closure x) - v_k(f, ∂x)`.
pub fn open_valuation(
    pair: &AdmissiblePair,
    x: &Simplex,
    k: usize,
    mc: &MonteCarloConfig,
) -> Result<Estimate, ValuationError> {
    let table = VolumeTable::compute(pair, mc)?;
    open_valuation_with(pair, &table, x, k)
}

pub fn open_valuation_with(
    pair: &AdmissiblePair,
    table: &VolumeTable,
    x: &Simplex,
    k: usize,
) -> Result<Estimate, ValuationError> {
    if !pair.complex().contains(x) {
        return Err(MapError::NotInComplex(x.clone()).into());
    }
    let closed = lefschetz_volume_on(pair, table, &Complex::of_simplex(x), k)?;
    let boundary = lefschetz_volume_on(pair, table, &Complex::boundary_of(x), k)?;
    Ok(Estimate {
        value: closed.value - boundary.value,
        provenance: Provenance::combine([(1.0, &closed.provenance), (1.0, &boundary.provenance)]),
    })
}

/// `Σ a_k v_k(f, X)`; coefficients past the ambient dimension multiply zero.
pub fn evaluate_linear_valuation(
    spec: &ValuationSpec,
    pair: &AdmissiblePair,
    mc: &MonteCarloConfig,
) -> Result<f64, ValuationError> {
    let v = lefschetz_volumes(pair, mc)?;
    Ok(spec.coefficients.iter().enumerate().map(|(k, a)| a * v.get(k)).sum())
}

/// Simplices `x` with `c(f, x) ≠ 0` and `μ_k(x) ≠ 0`; each contains a fixed
/// point of `f` and has dimension at least `k`.
///
/// For a nondegenerate simplex `μ_k(x) > 0` exactly when `k ≤ dim x`, so no
/// volumes need to be evaluated.
pub fn fixed_point_witnesses(pair: &AdmissiblePair, k: usize) -> Vec<Simplex> {
    pair.complex()
        .iter()
        .filter(|s| s.dim() >= k && coefficient(pair.map(), s) != 0)
        .cloned()
        .collect()
}
