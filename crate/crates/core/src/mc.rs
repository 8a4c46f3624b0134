//! Seeded, thread-count independent Monte Carlo plumbing.
//!
//! Samples are split into fixed-size chunks. Chunk `i` draws from a ChaCha8
//! generator seeded with the estimate's seed and switched to stream `i`, so the
//! same `(seed, samples)` always produces the same hits however rayon schedules
//! the chunks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub samples: u64,
    pub seed: u64,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        Self {
            samples: 1_000_000,
            seed: 0,
        }
    }
}

/// How a numeric value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Exact,
    MonteCarlo { std_error: f64 },
}

impl Provenance {
    pub fn std_error(&self) -> f64 {
        match self {
            Provenance::Exact => 0.0,
            Provenance::MonteCarlo { std_error } => *std_error,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Provenance::Exact)
    }

    /// Provenance of `Σ c_i x_i` for independent estimates `x_i`.
    pub fn combine<'a>(terms: impl IntoIterator<Item = (f64, &'a Provenance)>) -> Provenance {
        let mut var = 0.0;
        let mut any_mc = false;
        for (coef, p) in terms {
            if let Provenance::MonteCarlo { std_error } = p {
                any_mc = true;
                var += (coef * std_error).powi(2);
            }
        }
        if any_mc {
            Provenance::MonteCarlo { std_error: var.sqrt() }
        } else {
            Provenance::Exact
        }
    }
}

/// A value with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub provenance: Provenance,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            provenance: Provenance::Exact,
        }
    }

    pub fn std_error(&self) -> f64 {
        self.provenance.std_error()
    }

    /// Comparison tolerance: `max(exact_tol, 3σ)`.
    pub fn tolerance(&self, exact_tol: f64) -> f64 {
        exact_tol.max(3.0 * self.std_error())
    }
}

/// Hit counts of a Bernoulli Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HitCount {
    pub hits: u64,
    pub samples: u64,
}

impl HitCount {
    pub fn fraction(&self) -> f64 {
        self.hits as f64 / self.samples as f64
    }

    /// Sample standard deviation of the hit indicator divided by `sqrt(samples)`.
    pub fn std_error(&self) -> f64 {
        let n = self.samples as f64;
        if self.samples < 2 {
            return 0.0;
        }
        let p = self.fraction();
        (p * (1.0 - p) * n / (n - 1.0)).sqrt() / n.sqrt()
    }
}

/// Runs `trial` `samples` times and counts how often it returns `true`.
pub fn count_hits<F>(samples: u64, seed: u64, trial: F) -> HitCount
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let hits = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let n = CHUNK.min(samples - chunk * CHUNK);
            (0..n).filter(|_| trial(&mut rng)).count() as u64
        })
        .sum();
    HitCount { hits, samples }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable seed derivation from a base seed and a byte tag.
pub fn derive_seed(seed: u64, tag: &[u8]) -> u64 {
    // FNV-1a over the tag, then mixed with the base seed.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in tag {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    splitmix64(seed ^ splitmix64(h))
}

/// Seed for the `index`-th child of `seed`.
pub fn child_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed).wrapping_add(index))
}
