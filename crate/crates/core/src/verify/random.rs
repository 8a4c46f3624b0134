//! Random admissible pairs for the property suites.

use std::collections::BTreeMap;

use rand::seq::{index, IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::complex::{Complex, Simplex, VertexId};
use crate::geometry::Embedding;
use crate::simplicial_map::{validate_map, AdmissiblePair, SelfMap};

const MAX_MAP_ATTEMPTS: usize = 10_000;
const MAX_EMBED_ATTEMPTS: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomComplexConfig {
    pub max_vertices: usize,
    pub max_dim: usize,
    pub ambient_dim: usize,
    pub edge_length_scale: f64,
    pub seed: u64,
}

impl RandomComplexConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.max_vertices == 0 || self.ambient_dim == 0 {
            return Err(VerifyError::InvalidConfig(
                "max_vertices and ambient_dim must be positive".into(),
            ));
        }
        if self.max_dim > self.ambient_dim {
            return Err(VerifyError::InvalidConfig(format!(
                "max_dim {} exceeds ambient_dim {}",
                self.max_dim, self.ambient_dim
            )));
        }
        if !(self.edge_length_scale > 0.0 && self.edge_length_scale.is_finite()) {
            return Err(VerifyError::InvalidConfig("edge_length_scale must be positive".into()));
        }
        Ok(())
    }
}

fn label(i: usize) -> VertexId {
    VertexId::new(format!("v{i:02}"))
}

fn random_points(n_vertices: usize, cfg: &RandomComplexConfig, rng: &mut ChaCha8Rng) -> Embedding {
    let coords = (0..n_vertices)
        .map(|i| {
            let p = (0..cfg.ambient_dim)
                .map(|_| rng.random_range(0.0..cfg.edge_length_scale))
                .collect();
            (label(i), p)
        })
        .collect();
    Embedding::new(cfg.ambient_dim, coords).expect("finite coordinates of the right length")
}

/// Random embedded complex: random generators of dimension at most
/// `max_dim` plus every vertex, with points resampled until every simplex is
/// nondegenerate.
pub fn random_complex(cfg: &RandomComplexConfig, rng: &mut ChaCha8Rng) -> Result<(Complex, Embedding), VerifyError> {
    cfg.validate()?;
    let n = rng.random_range(1..=cfg.max_vertices);
    let n_gens = rng.random_range(1..=n);
    let mut gens: Vec<Simplex> = (0..n).map(|i| Simplex::vertex(label(i))).collect();
    for _ in 0..n_gens {
        let size = rng.random_range(1..=(cfg.max_dim + 1).min(n));
        let picked = index::sample(rng, n, size);
        gens.push(Simplex::new(picked.iter().map(label)).expect("distinct indices"));
    }
    let complex = Complex::closure(gens);
    for _ in 0..MAX_EMBED_ATTEMPTS {
        let e = random_points(n, cfg, rng);
        if e.check_nondegenerate(&complex).is_ok() {
            return Ok((complex, e));
        }
    }
    Err(VerifyError::GenerationExhausted {
        what: "nondegenerate embedding",
        attempts: MAX_EMBED_ATTEMPTS,
    })
}

/// Random simplicial self-map by rejection sampling.
///
/// Each attempt picks a random simplex and makes it invariant: half the time
/// pointwise fixed, otherwise permuted at random. Every other vertex stays put
/// with a probability that grows with the attempt number and is otherwise sent
/// to a random vertex.
pub fn random_self_map(x: &Complex, rng: &mut ChaCha8Rng) -> Result<SelfMap, VerifyError> {
    let vertices: Vec<VertexId> = x.vertices().cloned().collect();
    if vertices.is_empty() {
        return Ok(SelfMap::identity(x));
    }
    let all: Vec<&Simplex> = x.iter().collect();
    for attempt in 0..MAX_MAP_ATTEMPTS {
        let anchor = *all.choose(rng).expect("nonempty complex");
        let mut images: Vec<VertexId> = anchor.vertices().to_vec();
        if rng.random_bool(0.5) {
            images.shuffle(rng);
        }
        let stay = (0.3 + attempt as f64 / 200.0).min(1.0);
        let assignment: BTreeMap<VertexId, VertexId> = vertices
            .iter()
            .map(|v| {
                let image = match anchor.vertices().iter().position(|a| a == v) {
                    Some(i) => images[i].clone(),
                    None if rng.random_bool(stay) => v.clone(),
                    None => vertices.choose(rng).expect("nonempty").clone(),
                };
                (v.clone(), image)
            })
            .collect();
        if let Ok(map) = validate_map(x, &assignment) {
            return Ok(map);
        }
    }
    Err(VerifyError::GenerationExhausted {
        what: "simplicial self-map",
        attempts: MAX_MAP_ATTEMPTS,
    })
}

/// Deterministic random admissible pair for `cfg.seed`.
pub fn generate_random_pair(cfg: &RandomComplexConfig) -> Result<AdmissiblePair, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (complex, embedding) = random_complex(cfg, &mut rng)?;
    let map = random_self_map(&complex, &mut rng)?;
    Ok(AdmissiblePair::new(complex, embedding, map.vertex_map())?)
}

/// Smallest subcomplex containing a few random simplices that the pair's map
/// sends into itself.
pub fn random_invariant_subcomplex(pair: &AdmissiblePair, rng: &mut ChaCha8Rng) -> Complex {
    let all: Vec<&Simplex> = pair.complex().iter().collect();
    if all.is_empty() {
        return Complex::empty();
    }
    let count = rng.random_range(1..=3);
    let mut sub = Complex::closure((0..count).map(|_| (*all.choose(rng).expect("nonempty")).clone()));
    loop {
        let images = Complex::closure(sub.iter().filter_map(|s| pair.map().image(s)));
        let next = sub.union(&images);
        if next == sub {
            return sub;
        }
        sub = next;
    }
}

/// A random nondegenerate `dim`-simplex in `R^dim` with vertices `v00..`.
pub fn random_simplex(dim: usize, rng: &mut ChaCha8Rng) -> Result<(Simplex, Embedding), VerifyError> {
    let cfg = RandomComplexConfig {
        max_vertices: dim + 1,
        max_dim: dim,
        ambient_dim: dim.max(1),
        edge_length_scale: 1.0,
        seed: 0,
    };
    let s = Simplex::new((0..=dim).map(label)).expect("distinct labels");
    let complex = Complex::of_simplex(&s);
    for _ in 0..MAX_EMBED_ATTEMPTS {
        let e = random_points(dim + 1, &cfg, rng);
        if e.check_nondegenerate(&complex).is_ok() {
            return Ok((s, e));
        }
    }
    Err(VerifyError::GenerationExhausted {
        what: "nondegenerate simplex",
        attempts: MAX_EMBED_ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64) -> RandomComplexConfig {
        RandomComplexConfig {
            max_vertices: 12,
            max_dim: 3,
            ambient_dim: 3,
            edge_length_scale: 1.0,
            seed,
        }
    }

    #[test]
    fn single_vertex_gets_identity() {
        let c = RandomComplexConfig {
            max_vertices: 1,
            ..cfg(5)
        };
        let pair = generate_random_pair(&c).unwrap();
        assert_eq!(pair.complex().len(), 1);
        assert_eq!(pair.map(), &SelfMap::identity(pair.complex()));
    }

    #[test]
    fn same_seed_same_pair() {
        assert_eq!(
            generate_random_pair(&cfg(99)).unwrap(),
            generate_random_pair(&cfg(99)).unwrap()
        );
        assert_ne!(
            generate_random_pair(&cfg(1)).unwrap(),
            generate_random_pair(&cfg(2)).unwrap()
        );
    }

    #[test]
    fn thousand_pairs_are_admissible() {
        let mut fixed = 0;
        for seed in 0..1000 {
            let pair = generate_random_pair(&cfg(seed)).unwrap();
            assert!(validate_map(pair.complex(), pair.map().vertex_map()).is_ok());
            assert!(pair.embedding().check_nondegenerate(pair.complex()).is_ok());
            assert!(pair.complex().dim().unwrap() <= 3);
            assert!(pair.complex().count(0) <= 12);
            if pair
                .complex()
                .iter()
                .any(|s| s.dim() > 0 && pair.map().image(s).as_ref() == Some(s))
            {
                fixed += 1;
            }
        }
        // the generator is biased toward invariant simplices
        assert!(fixed > 300, "{fixed}");
    }

    #[test]
    fn invariant_subcomplexes_restrict() {
        for seed in 0..100 {
            let pair = generate_random_pair(&cfg(seed)).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sub = random_invariant_subcomplex(&pair, &mut rng);
            assert!(pair.restrict(&sub).is_ok());
        }
    }

    #[test]
    fn bad_configs() {
        let c = RandomComplexConfig { max_dim: 4, ..cfg(0) };
        assert!(matches!(generate_random_pair(&c), Err(VerifyError::InvalidConfig(_))));
        let c = RandomComplexConfig {
            max_vertices: 0,
            ..cfg(0)
        };
        assert!(generate_random_pair(&c).is_err());
    }
}
