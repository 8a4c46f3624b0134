//! JSON file formats: complexes (with optional map), standalone maps, and
//! observation lists for coefficient fitting.
//!
//! A complex file looks like
//!
//! ```json
//! {
//!   "ambient_dim": 1,
//!   "vertices": { "a": [0.0], "b": [2.0] },
//!   "maximal_simplices": [["a", "b"]],
//!   "map": { "a": "b", "b": "a" },
//!   "notes": "free text"
//! }
//! ```
//!
//! `map` and `notes` are optional; without a map the identity is used.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, ComplexError, Simplex, VertexId};
use crate::geometry::{Embedding, GeometryError};
use crate::simplicial_map::{AdmissiblePair, MapError, SelfMap};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error in {origin}: {message}")]
    Parse { origin: String, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub type VertexAssignment = BTreeMap<VertexId, VertexId>;

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_owned(),
        source,
    })
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse {
        origin: origin.to_owned(),
        message: e.to_string(),
    })
}

/// On-disk description of an embedded complex and, optionally, a self-map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub ambient_dim: usize,
    pub vertices: BTreeMap<String, Vec<f64>>,
    pub maximal_simplices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

impl ComplexFile {
    pub fn from_json(text: &str, origin: &str) -> Result<Self, IoError> {
        let file: ComplexFile = parse(text, origin)?;
        file.validate()?;
        Ok(file)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, IoError> {
        let path = path.as_ref();
        Self::from_json(&read(path)?, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex file serializes")
    }

    /// Coordinate lengths match `ambient_dim` and every label resolves.
    pub fn validate(&self) -> Result<(), IoError> {
        for (label, p) in &self.vertices {
            if p.len() != self.ambient_dim {
                return Err(IoError::Schema(format!(
                    "vertex {label} has {} coordinates, ambient_dim is {}",
                    p.len(),
                    self.ambient_dim
                )));
            }
        }
        let known = |l: &String| self.vertices.contains_key(l);
        for s in &self.maximal_simplices {
            if let Some(l) = s.iter().find(|l| !known(l)) {
                return Err(IoError::Schema(format!("simplex refers to undeclared vertex {l}")));
            }
        }
        if let Some(map) = &self.map {
            if let Some(l) = map.iter().flat_map(|(a, b)| [a, b]).find(|l| !known(l)) {
                return Err(IoError::Schema(format!("map refers to undeclared vertex {l}")));
            }
        }
        Ok(())
    }

    /// The complex: closure of the maximal simplices plus every declared
    /// vertex.
    pub fn complex(&self) -> Result<Complex, IoError> {
        let mut gens = self
            .maximal_simplices
            .iter()
            .map(|s| Simplex::new(s.iter().map(String::as_str)))
            .collect::<Result<Vec<_>, _>>()?;
        gens.extend(self.vertices.keys().map(|l| Simplex::vertex(l.as_str())));
        Ok(Complex::closure(gens))
    }

    pub fn embedding(&self) -> Result<Embedding, IoError> {
        Ok(Embedding::new(
            self.ambient_dim,
            self.vertices
                .iter()
                .map(|(l, p)| (VertexId::from(l.as_str()), p.clone()))
                .collect(),
        )?)
    }

    pub fn assignment(&self) -> Option<VertexAssignment> {
        self.map.as_ref().map(to_assignment)
    }

    /// Admissible pair using `map` if given, else the file's map, else the
    /// identity.
    pub fn pair(&self, map: Option<&VertexAssignment>) -> Result<AdmissiblePair, IoError> {
        let complex = self.complex()?;
        let embedding = self.embedding()?;
        let assignment = match map.cloned().or_else(|| self.assignment()) {
            Some(a) => a,
            None => SelfMap::identity(&complex).vertex_map().clone(),
        };
        Ok(AdmissiblePair::new(complex, embedding, &assignment)?)
    }

    /// File describing `pair`, listing its maximal simplices.
    pub fn from_pair(pair: &AdmissiblePair) -> Self {
        Self {
            ambient_dim: pair.ambient_dim(),
            vertices: pair
                .complex()
                .vertices()
                .map(|v| (v.to_string(), pair.embedding().point(v).expect("covered").to_vec()))
                .collect(),
            maximal_simplices: pair
                .complex()
                .maximal_simplices()
                .iter()
                .filter(|s| s.dim() > 0)
                .map(|s| s.vertices().iter().map(ToString::to_string).collect())
                .collect(),
            map: Some(
                pair.map()
                    .vertex_map()
                    .iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
            ),
            notes: None,
        }
    }
}

fn to_assignment(map: &BTreeMap<String, String>) -> VertexAssignment {
    map.iter()
        .map(|(a, b)| (VertexId::from(a.as_str()), VertexId::from(b.as_str())))
        .collect()
}

/// A standalone map file: a JSON object from vertex label to image label.
pub fn read_map_file(path: impl AsRef<Path>) -> Result<VertexAssignment, IoError> {
    let path = path.as_ref();
    let map: BTreeMap<String, String> = parse(&read(path)?, &path.display().to_string())?;
    Ok(to_assignment(&map))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Observation {
    /// Complex file, relative to the observations file.
    pub complex: PathBuf,
    /// Optional map file overriding the complex file's map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<PathBuf>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservationsFile {
    pub observations: Vec<Observation>,
}

impl ObservationsFile {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, IoError> {
        let path = path.as_ref();
        parse(&read(path)?, &path.display().to_string())
    }

    /// Loads every referenced pair, resolving paths against `base_dir`.
    pub fn load_pairs(&self, base_dir: &Path) -> Result<Vec<(AdmissiblePair, f64)>, IoError> {
        self.observations
            .iter()
            .map(|o| {
                let file = ComplexFile::from_path(base_dir.join(&o.complex))?;
                let map = o.map.as_ref().map(|m| read_map_file(base_dir.join(m))).transpose()?;
                Ok((file.pair(map.as_ref())?, o.value))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EDGE: &str = r#"{
        "ambient_dim": 1,
        "vertices": {"a": [0.0], "b": [2.0]},
        "maximal_simplices": [["a", "b"]],
        "map": {"a": "b", "b": "a"}
    }"#;

    #[test]
    fn parse_and_build_pair() {
        let f = ComplexFile::from_json(EDGE, "edge").unwrap();
        let pair = f.pair(None).unwrap();
        assert_eq!(pair.complex().len(), 3);
        assert_eq!(
            pair.orientation_coefficient(&Simplex::new(["a", "b"]).unwrap())
                .unwrap(),
            -1
        );
        let id: VertexAssignment = [("a", "a"), ("b", "b")]
            .into_iter()
            .map(|(x, y)| (VertexId::from(x), VertexId::from(y)))
            .collect();
        let pair = f.pair(Some(&id)).unwrap();
        assert_eq!(
            pair.orientation_coefficient(&Simplex::new(["a", "b"]).unwrap())
                .unwrap(),
            1
        );
    }

    #[test]
    fn schema_violations() {
        let bad_len = r#"{"ambient_dim": 2, "vertices": {"a": [0.0]}, "maximal_simplices": []}"#;
        assert!(matches!(ComplexFile::from_json(bad_len, "t"), Err(IoError::Schema(_))));
        let bad_label = r#"{"ambient_dim": 1, "vertices": {"a": [0.0]}, "maximal_simplices": [["a","z"]]}"#;
        assert!(matches!(
            ComplexFile::from_json(bad_label, "t"),
            Err(IoError::Schema(_))
        ));
        let unknown = r#"{"ambient_dim": 1, "vertices": {}, "maximal_simplices": [], "extra": 1}"#;
        assert!(matches!(
            ComplexFile::from_json(unknown, "t"),
            Err(IoError::Parse { .. })
        ));
        assert!(matches!(ComplexFile::from_json("{", "t"), Err(IoError::Parse { .. })));
    }

    #[test]
    fn invalid_map_surfaces_as_map_error() {
        let text = r#"{"ambient_dim": 1, "vertices": {"a": [0.0], "b": [1.0], "c": [3.0]},
                       "maximal_simplices": [["a","b"]], "map": {"a": "a", "b": "c", "c": "c"}}"#;
        let f = ComplexFile::from_json(text, "t").unwrap();
        assert!(matches!(
            f.pair(None),
            Err(IoError::Map(MapError::ImageNotSimplex { .. }))
        ));
    }

    #[test]
    fn degenerate_embedding_surfaces_as_geometry_error() {
        let text = r#"{"ambient_dim": 2, "vertices": {"a": [0.0, 0.0], "b": [1.0, 1.0], "c": [2.0, 2.0]},
                       "maximal_simplices": [["a","b","c"]]}"#;
        let f = ComplexFile::from_json(text, "t").unwrap();
        assert!(matches!(
            f.pair(None),
            Err(IoError::Map(MapError::Geometry(GeometryError::Degenerate { .. })))
        ));
    }

    #[test]
    fn round_trip_through_pair() {
        let f = ComplexFile::from_json(EDGE, "edge").unwrap();
        let g = ComplexFile::from_pair(&f.pair(None).unwrap());
        assert_eq!(f, g);
        assert_eq!(ComplexFile::from_json(&g.to_json(), "g").unwrap(), g);
    }
}
