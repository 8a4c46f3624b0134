//! Recovery of the coefficients `a_k` of a valuation `v = Σ a_k v_k` from
//! observed values on sample pairs, by least squares.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{lefschetz_volumes, ValuationError, ValuationSpec};
use crate::mc::MonteCarloConfig;
use crate::simplicial_map::AdmissiblePair;

/// Singular values below this fraction of the largest count as zero.
const RANK_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub spec: ValuationSpec,
    /// `‖F a - y‖₂`.
    pub residual_norm: f64,
    /// `σ_max / σ_min` of the feature matrix.
    pub condition: f64,
    pub rank: usize,
    pub singular_values: Vec<f64>,
}

/// Least-squares solve of `features · a ≈ observed`, rejecting rank-deficient
/// feature matrices.
pub fn hadwiger_decompose_features(
    features: &[Vec<f64>],
    observed: &[f64],
    unknowns: usize,
) -> Result<Decomposition, ValuationError> {
    if features.len() != observed.len() {
        return Err(ValuationError::BadObservations(format!(
            "{} feature rows for {} observations",
            features.len(),
            observed.len()
        )));
    }
    if let Some(row) = features.iter().find(|r| r.len() != unknowns) {
        return Err(ValuationError::BadObservations(format!(
            "feature row of length {}, expected {unknowns}",
            row.len()
        )));
    }
    if observed.iter().chain(features.iter().flatten()).any(|v| !v.is_finite()) {
        return Err(ValuationError::BadObservations("non-finite value".into()));
    }
    let m = features.len();
    let a = DMatrix::from_fn(m, unknowns, |i, j| features[i][j]);
    let b = DVector::from_column_slice(observed);
    let svd = a.clone().svd(true, true);
    let mut singular_values: Vec<f64> = svd.singular_values.iter().copied().collect();
    singular_values.sort_by(|x, y| y.total_cmp(x));
    let smax = singular_values.first().copied().unwrap_or(0.0);
    let cutoff = RANK_RTOL * smax;
    let rank = singular_values.iter().filter(|s| **s > cutoff && **s > 0.0).count();
    if rank < unknowns {
        return Err(ValuationError::Underdetermined {
            rank,
            unknowns,
            null_space_dim: unknowns - rank,
        });
    }
    let x = svd
        .solve(&b, cutoff)
        .map_err(|e| ValuationError::BadObservations(e.to_string()))?;
    let residual_norm = (&a * &x - &b).norm();
    let smin = singular_values[unknowns - 1];
    Ok(Decomposition {
        spec: ValuationSpec::new(x.iter().copied().collect()),
        residual_norm,
        condition: smax / smin,
        rank,
        singular_values,
    })
}

/// Fits `observed ≈ Σ_k a_k v_k(pair)` for `k = 0..=n`.
pub fn hadwiger_decompose(
    samples: &[(AdmissiblePair, f64)],
    n: usize,
    mc: &MonteCarloConfig,
) -> Result<Decomposition, ValuationError> {
    let mut features = Vec::with_capacity(samples.len());
    for (pair, _) in samples {
        if pair.ambient_dim() != n {
            return Err(ValuationError::BadObservations(format!(
                "pair lives in R^{}, expected R^{n}",
                pair.ambient_dim()
            )));
        }
        features.push(lefschetz_volumes(pair, mc)?.values);
    }
    let observed: Vec<f64> = samples.iter().map(|(_, y)| *y).collect();
    hadwiger_decompose_features(&features, &observed, n + 1)
}
