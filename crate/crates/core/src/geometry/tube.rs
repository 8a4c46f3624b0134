//! Point-to-simplex distances and Monte Carlo tube volumes.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{unit_ball_volume, Embedding, GeometryError, IntrinsicVolumeVector, SimplexGeometry};
use crate::complex::Simplex;
use crate::mc::{count_hits, Estimate, Provenance};

/// Monte Carlo estimate of `Vol(A_ρ)` for a closed simplex `A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubeEstimate {
    pub rho: f64,
    pub volume_estimate: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Projection data for one face: `t = M (p - base)` are the affine
/// coordinates of the projection of `p` onto the face's affine hull.
struct FaceProjector {
    base: Vec<f64>,
    /// Edge vectors, `m` columns of length `n`, column-major.
    edges: Vec<f64>,
    /// `(EᵀE)⁻¹ Eᵀ`, row-major `m x n`.
    pinv: Vec<f64>,
    m: usize,
}

/// Exact Euclidean distance to a simplex given by its vertex points.
///
/// The nearest point lies in the relative interior of some face, where it is
/// the orthogonal projection onto that face's affine hull. Every face whose
/// projection has nonnegative barycentric coordinates yields a point of the
/// simplex, so the minimum over those candidates is the distance.
pub(crate) struct SimplexDistance {
    n: usize,
    faces: Vec<FaceProjector>,
    scale: f64,
}

const BARY_TOL: f64 = 1e-12;

impl SimplexDistance {
    pub fn new(points: &[&[f64]]) -> Self {
        let n = points.first().map_or(0, |p| p.len());
        let k = points.len();
        let mut faces = Vec::new();
        let mut scale: f64 = 1.0;
        for mask in 1u64..(1 << k) {
            let idx: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            let base = points[idx[0]].to_vec();
            let m = idx.len() - 1;
            let e = DMatrix::from_fn(n, m, |r, c| points[idx[c + 1]][r] - base[r]);
            for c in 0..m {
                scale = scale.max(e.column(c).norm());
            }
            let pinv = if m == 0 {
                DMatrix::zeros(0, n)
            } else {
                // R⁻¹Qᵀ avoids squaring the condition number of thin faces.
                let qr = e.clone().qr();
                let Some(pinv) = qr.r().solve_upper_triangular(&qr.q().transpose()) else {
                    continue;
                };
                pinv
            };
            faces.push(FaceProjector {
                base,
                edges: e.as_slice().to_vec(),
                pinv: pinv.transpose().as_slice().to_vec(),
                m,
            });
        }
        Self { n, faces, scale }
    }

    pub fn distance_squared(&self, p: &[f64]) -> f64 {
        let n = self.n;
        let mut best = f64::INFINITY;
        let mut buf = [0.0f64; 64];
        let mut heap;
        let scratch: &mut [f64] = if 2 * n <= buf.len() {
            &mut buf[..2 * n]
        } else {
            heap = vec![0.0; 2 * n];
            &mut heap
        };
        let (r, t) = scratch.split_at_mut(n);
        for f in &self.faces {
            for i in 0..n {
                r[i] = p[i] - f.base[i];
            }
            let mut sum = 0.0;
            let mut inside = true;
            for (row, tj) in f.pinv.chunks_exact(n).zip(t.iter_mut()) {
                *tj = row.iter().zip(r.iter()).map(|(a, b)| a * b).sum();
                if *tj < -BARY_TOL {
                    inside = false;
                    break;
                }
                sum += *tj;
            }
            if !inside || sum > 1.0 + BARY_TOL {
                continue;
            }
            let mut d2 = 0.0;
            for (i, ri) in r.iter().enumerate() {
                let proj: f64 = t[..f.m].iter().enumerate().map(|(j, tj)| f.edges[j * n + i] * tj).sum();
                d2 += (ri - proj).powi(2);
            }
            best = best.min(d2);
        }
        best
    }

    pub fn distance(&self, p: &[f64]) -> f64 {
        let d2 = self.distance_squared(p);
        // Round-off residue for points inside the simplex.
        if d2 <= (1e-12 * self.scale).powi(2) {
            0.0
        } else {
            d2.sqrt()
        }
    }
}

/// Distance from `p` to the closed simplex `s`.
pub fn point_simplex_distance(p: &[f64], s: &Simplex, e: &Embedding) -> Result<f64, GeometryError> {
    if p.len() != e.ambient_dim() {
        return Err(GeometryError::InvalidConfig(format!(
            "point has {} coordinates, ambient dimension is {}",
            p.len(),
            e.ambient_dim()
        )));
    }
    let pts = e.points(s)?;
    Ok(SimplexDistance::new(&pts).distance(p))
}

/// Monte Carlo volume of the radius-`rho` tube around a closed simplex.
///
/// Points are drawn uniformly from the simplex's bounding box inflated by
/// `rho`; the estimate is the box volume times the hit fraction.
pub fn tube_volume_mc(
    s: &Simplex,
    e: &Embedding,
    rho: f64,
    samples: u64,
    seed: u64,
) -> Result<TubeEstimate, GeometryError> {
    if samples == 0 {
        return Err(GeometryError::InvalidConfig(
            "tube estimate needs at least one sample".into(),
        ));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(GeometryError::InvalidConfig(format!(
            "tube radius must be positive, got {rho}"
        )));
    }
    SimplexGeometry::new(s, e)?.check_nondegenerate()?;
    let pts = e.points(s)?;
    let n = e.ambient_dim();
    let lo: Vec<f64> = (0..n)
        .map(|i| pts.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min) - rho)
        .collect();
    let hi: Vec<f64> = (0..n)
        .map(|i| pts.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max) + rho)
        .collect();
    let box_volume: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let dist = SimplexDistance::new(&pts);
    let rho2 = rho * rho;
    let hits = count_hits(samples, seed, |rng| {
        let x: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| rng.random_range(*a..*b)).collect();
        dist.distance_squared(&x) <= rho2
    });
    Ok(TubeEstimate {
        rho,
        volume_estimate: box_volume * hits.fraction(),
        std_error: box_volume * hits.std_error(),
        samples,
        seed,
    })
}

/// `Σ_k ρ^{n-k} ω_{n-k} μ_k` for ambient dimension `n`.
pub fn steiner_polynomial(mu: &IntrinsicVolumeVector, ambient_dim: usize, rho: f64) -> Estimate {
    let terms: Vec<(f64, Estimate)> = (0..=ambient_dim)
        .map(|k| {
            let j = ambient_dim - k;
            (rho.powi(j as i32) * unit_ball_volume(j), mu.estimate(k))
        })
        .collect();
    Estimate {
        value: terms.iter().map(|(c, m)| c * m.value).sum(),
        provenance: Provenance::combine(terms.iter().map(|(c, m)| (*c, &m.provenance))),
    }
}
