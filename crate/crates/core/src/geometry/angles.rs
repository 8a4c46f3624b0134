//! External angles and intrinsic volumes of simplices.
//!
//! For a simplex `P`, `μ_k(P) = Σ γ(F, P) vol_k(F)` over its k-faces `F`, where
//! `γ(F, P)` is the normalized external angle: the fraction of the normal
//! space of `F` (inside the affine hull of `P`) occupied by the normal cone.
//! Angles are exact for codimension at most two and Monte Carlo otherwise.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::DVector;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{cayley_menger_volume, mask_indices, orthonormal_complement, Embedding, GeometryError, SimplexGeometry};
use crate::complex::Simplex;
use crate::mc::{count_hits, derive_seed, Estimate, MonteCarloConfig, Provenance};

/// `(μ_0, …, μ_d)` of one simplex, with per-entry provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntrinsicVolumeVector {
    pub values: Vec<f64>,
    pub provenance: Vec<Provenance>,
}

impl IntrinsicVolumeVector {
    /// `μ_k`, zero past the stored dimension.
    pub fn get(&self, k: usize) -> f64 {
        self.values.get(k).copied().unwrap_or(0.0)
    }

    pub fn estimate(&self, k: usize) -> Estimate {
        match self.values.get(k) {
            Some(&value) => Estimate {
                value,
                provenance: self.provenance[k],
            },
            None => Estimate::exact(0.0),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

const MAX_DIM: usize = 16;

/// A simplex prepared for angle computations in its own affine hull.
struct Polytope<'a> {
    geom: SimplexGeometry<'a>,
    frame: Vec<DVector<f64>>,
}

impl<'a> Polytope<'a> {
    fn new(s: &'a Simplex, e: &Embedding) -> Result<Self, GeometryError> {
        if s.dim() > MAX_DIM {
            return Err(GeometryError::InvalidConfig(format!(
                "simplices above dimension {MAX_DIM} are not supported"
            )));
        }
        let geom = SimplexGeometry::new(s, e)?;
        geom.check_nondegenerate()?;
        let frame = geom.local_frame()?;
        Ok(Self { geom, frame })
    }

    fn full_mask(&self) -> u64 {
        (1u64 << self.frame.len()) - 1
    }

    fn dim(&self) -> usize {
        self.frame.len() - 1
    }

    fn face_volume(&self, mask: u64) -> f64 {
        cayley_menger_volume(&self.geom.sub_distances(mask))
    }

    fn angle(&self, mask: u64, mc: &MonteCarloConfig) -> Estimate {
        let d = self.dim();
        let face = mask_indices(mask);
        let outside: Vec<usize> = (0..=d).filter(|i| mask >> i & 1 == 0).collect();
        let base = &self.frame[face[0]];
        let directions: Vec<DVector<f64>> = face[1..].iter().map(|&i| &self.frame[i] - base).collect();
        match outside.len() {
            0 => Estimate::exact(1.0),
            1 => Estimate::exact(0.5),
            2 => {
                let normal = orthonormal_complement(&directions, d);
                let project = |i: usize| {
                    let w = &self.frame[i] - base;
                    DVector::from_iterator(normal.len(), normal.iter().map(|n| n.dot(&w)))
                };
                let (u, v) = (project(outside[0]), project(outside[1]));
                let dot = u.dot(&v);
                let cross = (u.norm_squared() * v.norm_squared() - dot * dot).max(0.0).sqrt();
                let dihedral = cross.atan2(dot);
                Estimate::exact((PI - dihedral) / (2.0 * PI))
            }
            _ => self.angle_mc(mask, &directions, &outside, mc),
        }
    }

    /// Fraction of Gaussian directions `u` in the normal space of the face for
    /// which every vertex outside the face lies strictly below the face's
    /// supporting level `u·x`.
    fn angle_mc(&self, mask: u64, directions: &[DVector<f64>], outside: &[usize], mc: &MonteCarloConfig) -> Estimate {
        let d = self.dim();
        let face = mask_indices(mask);
        let base = &self.frame[face[0]];
        let normal = orthonormal_complement(directions, d);
        let m = normal.len();
        let constraints: Vec<f64> = outside
            .iter()
            .flat_map(|&i| {
                let w = &self.frame[i] - base;
                normal.iter().map(move |n| n.dot(&w)).collect::<Vec<_>>()
            })
            .collect();
        let seed = derive_seed(mc.seed, angle_tag(self.geom.simplex, mask).as_bytes());
        let hits = count_hits(mc.samples, seed, |rng| {
            let mut g = [0.0f64; MAX_DIM];
            for gi in g.iter_mut().take(m) {
                *gi = StandardNormal.sample(rng);
            }
            constraints
                .chunks_exact(m)
                .all(|c| c.iter().zip(&g).map(|(a, b)| a * b).sum::<f64>() < 0.0)
        });
        Estimate {
            value: hits.fraction(),
            provenance: Provenance::MonteCarlo {
                std_error: hits.std_error(),
            },
        }
    }

    fn intrinsic_volumes(&self, mc: &MonteCarloConfig) -> IntrinsicVolumeVector {
        let d = self.dim();
        let mut values = vec![1.0];
        let mut provenance = vec![Provenance::Exact];
        for k in 1..=d {
            let terms: Vec<(f64, Estimate)> = (1..=self.full_mask())
                .filter(|m| m.count_ones() as usize == k + 1)
                .map(|m| (self.face_volume(m), self.angle(m, mc)))
                .collect();
            values.push(terms.iter().map(|(vol, g)| vol * g.value).sum());
            provenance.push(Provenance::combine(terms.iter().map(|(vol, g)| (*vol, &g.provenance))));
        }
        IntrinsicVolumeVector { values, provenance }
    }
}

fn angle_tag(polytope: &Simplex, mask: u64) -> String {
    format!("angle|{polytope}|{}", polytope.sub_face(mask))
}

fn face_mask(face: &Simplex, polytope: &Simplex) -> Result<u64, GeometryError> {
    if !face.is_face_of(polytope) {
        return Err(GeometryError::NotAFace {
            face: face.clone(),
            polytope: polytope.clone(),
        });
    }
    Ok(polytope
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, v)| face.contains_vertex(v))
        .fold(0u64, |m, (i, _)| m | 1 << i))
}

fn check_mc(mc: &MonteCarloConfig) -> Result<(), GeometryError> {
    if mc.samples == 0 {
        return Err(GeometryError::InvalidConfig(
            "Monte Carlo samples must be positive".into(),
        ));
    }
    Ok(())
}

/// Normalized external angle `γ(F, P)` of face `F` of simplex `P`.
pub fn external_angle(
    face: &Simplex,
    polytope: &Simplex,
    e: &Embedding,
    mc: &MonteCarloConfig,
) -> Result<Estimate, GeometryError> {
    let mask = face_mask(face, polytope)?;
    let p = Polytope::new(polytope, e)?;
    if p.dim() + 1 - face.vertices().len() >= 3 {
        check_mc(mc)?;
    }
    Ok(p.angle(mask, mc))
}

/// Intrinsic volumes `(μ_0, …, μ_d)` of a closed simplex.
///
/// `μ_0` is 1 by definition. `μ_d`, `μ_{d-1}` and `μ_{d-2}` are exact; lower
/// entries (only present for `d ≥ 4`) use Monte Carlo external angles.
pub fn intrinsic_volumes(
    s: &Simplex,
    e: &Embedding,
    mc: &MonteCarloConfig,
) -> Result<IntrinsicVolumeVector, GeometryError> {
    if s.dim() >= 4 {
        check_mc(mc)?;
    }
    Ok(Polytope::new(s, e)?.intrinsic_volumes(mc))
}

/// Intrinsic volumes of the open simplex by the sign rule
/// `μ_k(open s) = (-1)^{d-k} μ_k(s)`.
pub fn open_intrinsic_volumes(
    s: &Simplex,
    e: &Embedding,
    mc: &MonteCarloConfig,
) -> Result<IntrinsicVolumeVector, GeometryError> {
    let closed = intrinsic_volumes(s, e, mc)?;
    let d = s.dim();
    let values = closed
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| if (d - k) % 2 == 0 { *v } else { -v })
        .collect();
    Ok(IntrinsicVolumeVector {
        values,
        provenance: closed.provenance,
    })
}

/// Intrinsic volumes of the open simplex as `μ_k(s) - μ_k(∂s)`, where the
/// boundary is summed over its open faces and each open face is obtained by
/// the same recursion down to vertices.
///
/// Each face's closed intrinsic volumes are computed independently (with
/// their own Monte Carlo seeds), and standard errors are propagated through
/// the resulting signed combination.
pub fn open_intrinsic_volumes_by_inclusion_exclusion(
    s: &Simplex,
    e: &Embedding,
    mc: &MonteCarloConfig,
) -> Result<IntrinsicVolumeVector, GeometryError> {
    let full = (1u64 << s.vertices().len()) - 1;
    // open(a) = closed(a) - Σ_{b ⊊ a} open(b), as coefficients on closed faces.
    let mut open: HashMap<u64, HashMap<u64, i64>> = HashMap::new();
    let mut masks: Vec<u64> = (1..=full).collect();
    masks.sort_by_key(|m| m.count_ones());
    for &a in &masks {
        let mut coef: HashMap<u64, i64> = HashMap::from([(a, 1)]);
        let mut b = (a - 1) & a;
        while b > 0 {
            for (face, c) in &open[&b] {
                *coef.entry(*face).or_default() -= c;
            }
            b = (b - 1) & a;
        }
        coef.retain(|_, c| *c != 0);
        open.insert(a, coef);
    }

    let d = s.dim();
    let mut values = vec![0.0; d + 1];
    let mut terms: Vec<Vec<(f64, Provenance)>> = vec![Vec::new(); d + 1];
    let mut faces: Vec<_> = open[&full].iter().map(|(m, c)| (*m, *c)).collect();
    faces.sort_unstable();
    for (mask, coef) in faces {
        let closed = intrinsic_volumes(&s.sub_face(mask), e, mc)?;
        for (k, (v, p)) in closed.values.iter().zip(&closed.provenance).enumerate() {
            values[k] += coef as f64 * v;
            terms[k].push((coef as f64, *p));
        }
    }
    let provenance = terms
        .iter()
        .map(|t| Provenance::combine(t.iter().map(|(c, p)| (*c, p))))
        .collect();
    Ok(IntrinsicVolumeVector { values, provenance })
}
