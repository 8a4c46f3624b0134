//! Simplicial self-maps given by vertex assignments, their orientation
//! coefficients `c(f, x)` and induced chain maps `f_q`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::complex::{Complex, Simplex, VertexId};
use crate::geometry::{Embedding, GeometryError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapError {
    #[error("no image assigned to vertex {0}")]
    MissingAssignment(VertexId),
    #[error("vertex {vertex} is sent to {image}, which is not a vertex of the complex")]
    ImageNotVertex { vertex: VertexId, image: VertexId },
    #[error("image of simplex {simplex} is {image}, which is not a simplex of the complex")]
    ImageNotSimplex { simplex: Simplex, image: Simplex },
    #[error("simplex {0} is not in the complex")]
    NotInComplex(Simplex),
    #[error("assignment for {0} is not a vertex of the complex")]
    UnknownVertex(VertexId),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A vertex assignment that has been checked to send simplices to simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfMap {
    vertex_map: BTreeMap<VertexId, VertexId>,
}

impl SelfMap {
    pub fn identity(x: &Complex) -> Self {
        Self {
            vertex_map: x.vertices().map(|v| (v.clone(), v.clone())).collect(),
        }
    }

    pub fn vertex_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.vertex_map
    }

    pub fn apply(&self, v: &VertexId) -> Option<&VertexId> {
        self.vertex_map.get(v)
    }

    /// Images of the vertices of `x`, in `x`'s canonical order.
    fn image_sequence<'a>(&'a self, x: &Simplex) -> Option<Vec<&'a VertexId>> {
        x.vertices().iter().map(|v| self.vertex_map.get(v)).collect()
    }

    /// Image vertex set `f(x)`, or `None` if some vertex is unassigned.
    pub fn image(&self, x: &Simplex) -> Option<Simplex> {
        let mut img: Vec<VertexId> = self.image_sequence(x)?.into_iter().cloned().collect();
        img.sort();
        img.dedup();
        Some(Simplex::from_sorted(img))
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &SelfMap) -> SelfMap {
        let vertex_map = other
            .vertex_map
            .iter()
            .map(|(v, w)| (v.clone(), self.vertex_map.get(w).unwrap_or(w).clone()))
            .collect();
        SelfMap { vertex_map }
    }

    /// Signed image of an oriented `q`-simplex: `None` when it collapses,
    /// otherwise the image simplex and the parity of the induced ordering.
    fn signed_image(&self, x: &Simplex) -> Option<(i64, Simplex)> {
        let seq = self.image_sequence(x)?;
        let image = self.image(x)?;
        if image.vertices().len() < seq.len() {
            return None;
        }
        Some((permutation_sign(&seq), image))
    }
}

/// `+1` if sorting `seq` needs an even number of transpositions, `-1` if odd.
fn permutation_sign<T: Ord>(seq: &[T]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Checks that `assignment` defines a simplicial self-map of `x`.
///
/// The first offending simplex in canonical order is reported.
pub fn validate_map(x: &Complex, assignment: &BTreeMap<VertexId, VertexId>) -> Result<SelfMap, MapError> {
    for v in assignment.keys() {
        if !x.contains_vertex(v) {
            return Err(MapError::UnknownVertex(v.clone()));
        }
    }
    for v in x.vertices() {
        let image = assignment
            .get(v)
            .ok_or_else(|| MapError::MissingAssignment(v.clone()))?;
        if !x.contains_vertex(image) {
            return Err(MapError::ImageNotVertex {
                vertex: v.clone(),
                image: image.clone(),
            });
        }
    }
    let map = SelfMap {
        vertex_map: assignment.clone(),
    };
    for s in x.iter().filter(|s| s.dim() > 0) {
        let image = map.image(s).expect("all vertices assigned");
        if !x.contains(&image) {
            return Err(MapError::ImageNotSimplex {
                simplex: s.clone(),
                image,
            });
        }
    }
    Ok(map)
}

/// `c(f, x)`: 0 unless `f(x) = x`, otherwise the sign of the permutation `f`
/// induces on the canonically ordered vertices of `x`.
pub fn orientation_coefficient(x_complex: &Complex, f: &SelfMap, x: &Simplex) -> Result<i64, MapError> {
    if !x_complex.contains(x) {
        return Err(MapError::NotInComplex(x.clone()));
    }
    Ok(coefficient(f, x))
}

pub(crate) fn coefficient(f: &SelfMap, x: &Simplex) -> i64 {
    match f.signed_image(x) {
        Some((sign, image)) if image == *x => sign,
        _ => 0,
    }
}

/// Matrix of the chain map `f_q` over the canonical `q`-simplex basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMapMatrix {
    pub q: usize,
    pub matrix: DMatrix<i64>,
}

impl ChainMapMatrix {
    pub fn trace(&self) -> i64 {
        self.matrix.diagonal().iter().sum()
    }
}

/// Induced chain map in dimension `q`. Column `x` holds `±1` at the row of
/// `f(x)`, or is zero when `f` collapses `x`. For `q > dim X` the matrix is
/// `0 x 0`.
pub fn chain_matrix(f: &SelfMap, x: &Complex, q: usize) -> ChainMapMatrix {
    let basis = x.simplices(q);
    let mut matrix = DMatrix::<i64>::zeros(basis.len(), basis.len());
    for (j, s) in basis.iter().enumerate() {
        if let Some((sign, image)) = f.signed_image(s) {
            let i = x.index_of(&image).expect("validated map sends simplices to simplices");
            matrix[(i, j)] = sign;
        }
    }
    ChainMapMatrix { q, matrix }
}

/// A geometrically realized complex with a simplicial self-map.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissiblePair {
    complex: Complex,
    embedding: Embedding,
    map: SelfMap,
}

impl AdmissiblePair {
    /// Validates the map and checks that the embedding covers the complex with
    /// every simplex nondegenerate.
    pub fn new(
        complex: Complex,
        embedding: Embedding,
        assignment: &BTreeMap<VertexId, VertexId>,
    ) -> Result<Self, MapError> {
        let map = validate_map(&complex, assignment)?;
        embedding.check_nondegenerate(&complex)?;
        Ok(Self {
            complex,
            embedding,
            map,
        })
    }

    pub fn identity(complex: Complex, embedding: Embedding) -> Result<Self, MapError> {
        let id = SelfMap::identity(&complex);
        Self::new(complex, embedding, &id.vertex_map)
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn map(&self) -> &SelfMap {
        &self.map
    }

    pub fn ambient_dim(&self) -> usize {
        self.embedding.ambient_dim()
    }

    /// Same complex and map over a different embedding, e.g. `φ(X)` with the
    /// conjugated map `φ f φ⁻¹`, which has the same vertex assignment.
    pub fn with_embedding(&self, embedding: Embedding) -> Result<Self, MapError> {
        embedding.check_nondegenerate(&self.complex)?;
        Ok(Self {
            complex: self.complex.clone(),
            embedding,
            map: self.map.clone(),
        })
    }

    /// Restriction to a subcomplex the map sends into itself.
    pub fn restrict(&self, sub: &Complex) -> Result<Self, MapError> {
        if let Some(s) = sub.iter().find(|s| !self.complex.contains(s)) {
            return Err(MapError::NotInComplex(s.clone()));
        }
        let assignment = sub
            .vertices()
            .map(|v| (v.clone(), self.map.vertex_map[v].clone()))
            .collect();
        let map = validate_map(sub, &assignment)?;
        Ok(Self {
            complex: sub.clone(),
            embedding: self.embedding.clone(),
            map,
        })
    }

    pub fn orientation_coefficient(&self, x: &Simplex) -> Result<i64, MapError> {
        orientation_coefficient(&self.complex, &self.map, x)
    }

    pub fn chain_matrix(&self, q: usize) -> ChainMapMatrix {
        chain_matrix(&self.map, &self.complex, q)
    }
}
