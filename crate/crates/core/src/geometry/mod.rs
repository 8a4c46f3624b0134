//! Geometric realization of complexes and the metric quantities built on it.
//!
//! Everything intrinsic to a simplex (volumes, angles, intrinsic volumes) is
//! computed from its pairwise squared distances alone, so the results do not
//! depend on the ambient dimension or on where the simplex sits in space.

mod angles;
mod isometry;
mod tube;

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::complex::{Complex, Simplex, VertexId};

pub use angles::{
    external_angle, intrinsic_volumes, open_intrinsic_volumes, open_intrinsic_volumes_by_inclusion_exclusion,
    IntrinsicVolumeVector,
};
pub use isometry::{apply_isometry, sample_isometry, IsometrySpec};
pub use tube::{point_simplex_distance, steiner_polynomial, tube_volume_mc, TubeEstimate};

/// Relative threshold below which a simplex counts as degenerate:
/// `vol_k < DEGENERACY_RATIO * (longest edge)^k`.
pub const DEGENERACY_RATIO: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("vertex {0} has no coordinates")]
    MissingCoordinates(VertexId),
    #[error("vertex {vertex} has {got} coordinates, ambient dimension is {expected}")]
    DimensionMismatch {
        vertex: VertexId,
        expected: usize,
        got: usize,
    },
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(VertexId),
    #[error("degenerate simplex {simplex}: volume {volume:e} below threshold {threshold:e}")]
    Degenerate {
        simplex: Simplex,
        volume: f64,
        threshold: f64,
    },
    #[error("{face} is not a face of {polytope}")]
    NotAFace { face: Simplex, polytope: Simplex },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Coordinates for vertices in `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    ambient_dim: usize,
    coords: BTreeMap<VertexId, Vec<f64>>,
}

impl Embedding {
    pub fn new(ambient_dim: usize, coords: BTreeMap<VertexId, Vec<f64>>) -> Result<Self, GeometryError> {
        for (v, p) in &coords {
            if p.len() != ambient_dim {
                return Err(GeometryError::DimensionMismatch {
                    vertex: v.clone(),
                    expected: ambient_dim,
                    got: p.len(),
                });
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(GeometryError::NonFinite(v.clone()));
            }
        }
        Ok(Self { ambient_dim, coords })
    }

    pub fn from_points<'a, I>(ambient_dim: usize, points: I) -> Result<Self, GeometryError>
    where
        I: IntoIterator<Item = (&'a str, Vec<f64>)>,
    {
        Self::new(
            ambient_dim,
            points.into_iter().map(|(l, p)| (VertexId::from(l), p)).collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn coords(&self) -> &BTreeMap<VertexId, Vec<f64>> {
        &self.coords
    }

    pub fn point(&self, v: &VertexId) -> Result<&[f64], GeometryError> {
        self.coords
            .get(v)
            .map(Vec::as_slice)
            .ok_or_else(|| GeometryError::MissingCoordinates(v.clone()))
    }

    pub fn points(&self, s: &Simplex) -> Result<Vec<&[f64]>, GeometryError> {
        s.vertices().iter().map(|v| self.point(v)).collect()
    }

    /// Every vertex of `x` has coordinates.
    pub fn covers(&self, x: &Complex) -> Result<(), GeometryError> {
        for v in x.vertices() {
            self.point(v)?;
        }
        Ok(())
    }

    /// Every simplex of `x` is nondegenerate under this embedding.
    pub fn check_nondegenerate(&self, x: &Complex) -> Result<(), GeometryError> {
        self.covers(x)?;
        for s in x.iter().filter(|s| s.dim() > 0) {
            SimplexGeometry::new(s, self)?.check_nondegenerate()?;
        }
        Ok(())
    }

    /// Applies `f` to every coordinate vector.
    pub fn map_points(&self, mut f: impl FnMut(&[f64]) -> Vec<f64>) -> Embedding {
        let coords: BTreeMap<_, _> = self.coords.iter().map(|(v, p)| (v.clone(), f(p))).collect();
        let ambient_dim = coords.values().next().map_or(self.ambient_dim, Vec::len);
        Embedding { ambient_dim, coords }
    }
}

/// Intrinsic volume of a simplex together with the degeneracy verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexVolume {
    /// `dim(s)`-dimensional volume; reported as 0 when degenerate.
    pub volume: f64,
    pub degenerate: bool,
}

/// `dim(s)`-dimensional volume of `s` via the Cayley–Menger determinant.
pub fn simplex_volume(s: &Simplex, e: &Embedding) -> Result<SimplexVolume, GeometryError> {
    let g = SimplexGeometry::new(s, e)?;
    let volume = cayley_menger_volume(&g.sq);
    let degenerate = volume < g.degeneracy_threshold(s.dim());
    Ok(SimplexVolume {
        volume: if degenerate { 0.0 } else { volume },
        degenerate,
    })
}

/// Volume of the `j`-dimensional unit ball, `π^{j/2} / Γ(j/2 + 1)`.
pub fn unit_ball_volume(j: usize) -> f64 {
    // ω_j = (2π / j) ω_{j-2}
    let (mut w, start) = if j % 2 == 0 { (1.0, 2) } else { (2.0, 3) };
    let mut i = start;
    while i <= j {
        w *= 2.0 * std::f64::consts::PI / i as f64;
        i += 2;
    }
    w
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// k-volume of the simplex whose squared pairwise distances are `sq`
/// (`(k+1) x (k+1)`), from the Cayley–Menger determinant
/// `vol² = (-1)^{k+1} det(CM) / (2^k (k!)²)`.
pub(crate) fn cayley_menger_volume(sq: &DMatrix<f64>) -> f64 {
    let n = sq.nrows();
    if n <= 1 {
        return if n == 1 { 1.0 } else { 0.0 };
    }
    let k = n - 1;
    let mut cm = DMatrix::<f64>::zeros(n + 1, n + 1);
    for i in 1..=n {
        cm[(0, i)] = 1.0;
        cm[(i, 0)] = 1.0;
        for j in 1..=n {
            cm[(i, j)] = sq[(i - 1, j - 1)];
        }
    }
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    let sign = if (k + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let vol2 = sign * cm.determinant() / (2f64.powi(k as i32) * fact * fact);
    vol2.max(0.0).sqrt()
}

/// Squared-distance view of one simplex, with vertices in canonical order.
pub(crate) struct SimplexGeometry<'a> {
    pub simplex: &'a Simplex,
    pub sq: DMatrix<f64>,
}

impl<'a> SimplexGeometry<'a> {
    pub fn new(simplex: &'a Simplex, e: &Embedding) -> Result<Self, GeometryError> {
        let pts = e.points(simplex)?;
        let n = pts.len();
        let sq = DMatrix::from_fn(n, n, |i, j| squared_distance(pts[i], pts[j]));
        Ok(Self { simplex, sq })
    }

    pub fn longest_edge(&self) -> f64 {
        self.sq.iter().copied().fold(0.0, f64::max).sqrt()
    }

    pub fn degeneracy_threshold(&self, k: usize) -> f64 {
        if k == 0 {
            return 0.0;
        }
        DEGENERACY_RATIO * self.longest_edge().powi(k as i32)
    }

    pub fn check_nondegenerate(&self) -> Result<f64, GeometryError> {
        let k = self.simplex.dim();
        let volume = cayley_menger_volume(&self.sq);
        let threshold = self.degeneracy_threshold(k);
        if k > 0 && (volume < threshold || volume == 0.0) {
            return Err(GeometryError::Degenerate {
                simplex: self.simplex.clone(),
                volume,
                threshold,
            });
        }
        Ok(volume)
    }

    /// Squared distances among the vertices selected by `mask`.
    pub fn sub_distances(&self, mask: u64) -> DMatrix<f64> {
        let idx = mask_indices(mask);
        DMatrix::from_fn(idx.len(), idx.len(), |i, j| self.sq[(idx[i], idx[j])])
    }

    /// Coordinates of the vertices in an orthonormal frame of the affine hull,
    /// recovered from distances: vertex 0 at the origin, the others from the
    /// Cholesky factor of the Gram matrix of edge vectors.
    pub fn local_frame(&self) -> Result<Vec<DVector<f64>>, GeometryError> {
        let d = self.simplex.dim();
        let mut out = vec![DVector::zeros(d)];
        if d == 0 {
            return Ok(out);
        }
        let gram = DMatrix::from_fn(d, d, |i, j| {
            0.5 * (self.sq[(0, i + 1)] + self.sq[(0, j + 1)] - self.sq[(i + 1, j + 1)])
        });
        let chol = gram.cholesky().ok_or_else(|| GeometryError::Degenerate {
            simplex: self.simplex.clone(),
            volume: 0.0,
            threshold: self.degeneracy_threshold(d),
        })?;
        let l = chol.l();
        for i in 0..d {
            out.push(l.row(i).transpose());
        }
        Ok(out)
    }
}

pub(crate) fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Orthonormal basis of the orthogonal complement of `span` in `R^d`.
pub(crate) fn orthonormal_complement(span: &[DVector<f64>], d: usize) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let orthogonalize = |v: &mut DVector<f64>, basis: &[DVector<f64>]| {
        for _ in 0..2 {
            for b in basis {
                let c = b.dot(v);
                v.axpy(-c, b, 1.0);
            }
        }
    };
    for v in span {
        let scale = v.norm();
        let mut w = v.clone();
        orthogonalize(&mut w, &basis);
        let n = w.norm();
        if n > 1e-10 * scale.max(f64::MIN_POSITIVE) {
            basis.push(w / n);
        }
    }
    let span_rank = basis.len();
    while basis.len() < d {
        let best = (0..d)
            .map(|i| {
                let mut e = DVector::zeros(d);
                e[i] = 1.0;
                orthogonalize(&mut e, &basis);
                e
            })
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("d > 0");
        let n = best.norm();
        basis.push(best / n);
    }
    basis.split_off(span_rank)
}
