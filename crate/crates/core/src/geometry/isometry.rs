use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::Embedding;

/// Euclidean motion `x ↦ R x + t` with `R` orthogonal (reflections allowed).
#[derive(Debug, Clone, PartialEq)]
pub struct IsometrySpec {
    pub rotation: DMatrix<f64>,
    pub translation: DVector<f64>,
}

impl IsometrySpec {
    pub fn identity(n: usize) -> Self {
        Self {
            rotation: DMatrix::identity(n, n),
            translation: DVector::zeros(n),
        }
    }

    pub fn translation(t: &[f64]) -> Self {
        Self {
            rotation: DMatrix::identity(t.len(), t.len()),
            translation: DVector::from_column_slice(t),
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    /// `max |RᵀR - I|`.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.dim();
        (self.rotation.transpose() * &self.rotation - DMatrix::<f64>::identity(n, n)).amax()
    }

    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        let x = DVector::from_column_slice(p);
        (&self.rotation * x + &self.translation).as_slice().to_vec()
    }
}

/// Random isometry of `R^n`: rotation from the QR factorization of a
/// standard normal matrix (column signs fixed so it is Haar distributed on
/// `O(n)`), translation uniform in `[-scale, scale]^n`.
pub fn sample_isometry(n: usize, seed: u64, translation_scale: f64) -> IsometrySpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    let translation = if translation_scale > 0.0 {
        DVector::from_fn(n, |_, _| rng.random_range(-translation_scale..=translation_scale))
    } else {
        DVector::zeros(n)
    };
    IsometrySpec {
        rotation: q,
        translation,
    }
}

/// Image of every vertex under `phi`.
pub fn apply_isometry(e: &Embedding, phi: &IsometrySpec) -> Embedding {
    e.map_points(|p| phi.apply(p))
}
