//! Abstract finite simplicial complexes.
//!
//! A [`Complex`] is a face-closed set of [`Simplex`] values over string-labelled
//! vertices. Every simplex is oriented by the ascending order of its labels, and
//! simplices of each dimension are enumerated lexicographically. Those two
//! conventions fix the bases of all chain-level matrices in the crate.

use std::collections::BTreeSet;
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("malformed simplex {labels:?}: duplicate vertex {duplicate}")]
    DuplicateVertex { labels: Vec<String>, duplicate: String },
    #[error("malformed simplex: a simplex needs at least one vertex")]
    EmptySimplex,
}

/// Vertex label. Labels are compared lexicographically; that order is the
/// canonical orientation order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Self {
        Self(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

/// A nonempty set of vertices stored in strictly ascending order.
///
/// The derived ordering compares vertex lists lexicographically, which is the
/// canonical enumeration order within one dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct Simplex {
    vertices: Vec<VertexId>,
}

impl Simplex {
    /// Builds a simplex from labels in any order.
    pub fn new<I, V>(labels: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut vertices: Vec<VertexId> = labels.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        let original: Vec<String> = vertices.iter().map(|v| v.0.clone()).collect();
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertex {
                labels: original,
                duplicate: w[0].0.clone(),
            });
        }
        Ok(Self { vertices })
    }

    pub fn vertex(label: impl Into<VertexId>) -> Self {
        Self {
            vertices: vec![label.into()],
        }
    }

    /// Caller guarantees `vertices` is nonempty and strictly ascending.
    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self { vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    /// True if every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.vertices.iter().all(|v| other.contains_vertex(v))
    }

    /// The face spanned by the vertices selected by `mask` (bit i = i-th vertex).
    pub(crate) fn sub_face(&self, mask: u64) -> Simplex {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect();
        Simplex::from_sorted(vertices)
    }

    /// All nonempty faces, including `self`.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.vertices.len();
        (1u64..(1u64 << n)).map(move |mask| self.sub_face(mask))
    }

    /// All nonempty faces other than `self`.
    pub fn proper_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let full = (1u64 << self.vertices.len()) - 1;
        (1u64..full).map(move |mask| self.sub_face(mask))
    }

    /// Codimension-one faces paired with the boundary sign `(-1)^i`, where `i`
    /// is the position of the omitted vertex.
    pub fn facets(&self) -> Vec<(i64, Simplex)> {
        if self.vertices.len() < 2 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|i| {
                let mut vs = self.vertices.clone();
                vs.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                (sign, Simplex::from_sorted(vs))
            })
            .collect()
    }
}

impl TryFrom<Vec<VertexId>> for Simplex {
    type Error = ComplexError;

    fn try_from(v: Vec<VertexId>) -> Result<Self, Self::Error> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<VertexId> {
    fn from(s: Simplex) -> Self {
        s.vertices
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// A finite abstract simplicial complex, closed under taking faces.
///
/// Simplices are kept per dimension, each list sorted lexicographically. The
/// empty complex has no simplices and stands for the empty set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Complex {
    by_dim: Vec<Vec<Simplex>>,
}

impl Complex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Smallest complex containing every given simplex.
    pub fn closure<I>(generators: I) -> Self
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
        for g in generators {
            for face in g.faces() {
                let d = face.dim();
                if sets.len() <= d {
                    sets.resize_with(d + 1, BTreeSet::new);
                }
                sets[d].insert(face);
            }
        }
        Self {
            by_dim: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    /// Closure of generators given as label lists.
    pub fn from_generators<G, V>(generators: impl IntoIterator<Item = G>) -> Result<Self, ComplexError>
    where
        G: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let simplices = generators
            .into_iter()
            .map(Simplex::new)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::closure(simplices))
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Dimension of the complex; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// Canonically ordered `q`-simplices (empty slice if there are none).
    pub fn simplices(&self, q: usize) -> &[Simplex] {
        self.by_dim.get(q).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices(q).len()
    }

    /// Number of simplices of all dimensions.
    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    /// All simplices, by ascending dimension then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.simplices(0).iter().map(|s| &s.vertices[0])
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.simplices(0).binary_search_by(|s| s.vertices[0].cmp(v)).is_ok()
    }

    /// Position of `s` in the canonical basis of its dimension.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.simplices(s.dim()).binary_search(s).ok()
    }

    /// Maximal simplices, in canonical order.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (q, layer) in self.by_dim.iter().enumerate() {
            let above = self.simplices(q + 1);
            for s in layer {
                if !above.iter().any(|t| s.is_face_of(t)) {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    /// Closed simplex `closure({s})`.
    pub fn of_simplex(s: &Simplex) -> Self {
        Self::closure([s.clone()])
    }

    /// Boundary complex of a closed simplex: all proper faces.
    pub fn boundary_of(s: &Simplex) -> Self {
        Self::closure(s.facets().into_iter().map(|(_, f)| f))
    }

    pub fn union(&self, other: &Complex) -> Complex {
        let d = self.by_dim.len().max(other.by_dim.len());
        let by_dim = (0..d)
            .map(|q| {
                let set: BTreeSet<&Simplex> = self.simplices(q).iter().chain(other.simplices(q)).collect();
                set.into_iter().cloned().collect()
            })
            .collect();
        Complex { by_dim }
    }

    pub fn intersection(&self, other: &Complex) -> Complex {
        let mut by_dim: Vec<Vec<Simplex>> = (0..self.by_dim.len().min(other.by_dim.len()))
            .map(|q| {
                self.simplices(q)
                    .iter()
                    .filter(|s| other.simplices(q).binary_search(s).is_ok())
                    .cloned()
                    .collect()
            })
            .collect();
        while by_dim.last().is_some_and(Vec::is_empty) {
            by_dim.pop();
        }
        Complex { by_dim }
    }

    /// Simplicial boundary operator `C_q -> C_{q-1}`.
    ///
    /// Rows index the canonical `(q-1)`-simplices and columns the canonical
    /// `q`-simplices; omitting the `i`-th vertex contributes `(-1)^i`. For
    /// `q = 0` or `q > dim` the matrix is empty with the matching shape.
    pub fn boundary_matrix(&self, q: usize) -> ChainBoundary {
        let cols = self.simplices(q);
        let rows = if q == 0 { &[][..] } else { self.simplices(q - 1) };
        let mut matrix = DMatrix::<i64>::zeros(rows.len(), cols.len());
        if q > 0 {
            for (j, s) in cols.iter().enumerate() {
                for (sign, face) in s.facets() {
                    let i = rows.binary_search(&face).expect("complex is closed under faces");
                    matrix[(i, j)] = sign;
                }
            }
        }
        ChainBoundary { q, matrix }
    }
}

/// Matrix of the boundary operator in dimension `q`, over canonical bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainBoundary {
    pub q: usize,
    pub matrix: DMatrix<i64>,
}

/// Returns `(X ∪ Y, X ∩ Y)`.
pub fn subcomplex_union_intersection(x: &Complex, y: &Complex) -> (Complex, Complex) {
    (x.union(y), x.intersection(y))
}
