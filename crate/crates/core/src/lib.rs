//! Lefschetz volumes of simplicial self-maps.
//!
//! For a simplicial map `f` on a geometrically realized complex `X ⊂ R^n`,
//! the k-th Lefschetz volume is
//!
//! ```text
//! v_k(f, X) = Σ_x (-1)^{dim x - k} c(f, x) μ_k(x)
//! ```
//!
//! where `c(f, x) ∈ {-1, 0, 1}` records whether `f` fixes the simplex `x` (and
//! with which orientation) and `μ_k` is the k-th intrinsic volume. `v_0` is
//! the Lefschetz number; for the identity map `v_k` is `μ_k(X)`.
//!
//! Modules:
//! - [`complex`]: abstract complexes, boundary matrices.
//! - [`geometry`]: embeddings, simplex volumes, external angles, intrinsic
//!   volumes, tube volumes, isometries.
//! - [`simplicial_map`]: self-maps, orientation coefficients, chain maps.
//! - [`valuations`]: Lefschetz volumes, linear valuations, coefficient fits.
//! - [`verify`]: seeded property suites with JSON reports.
//! - [`io`]: the JSON file formats.

pub mod complex;
pub mod geometry;
pub mod io;
pub mod mc;
pub mod simplicial_map;
pub mod valuations;
pub mod verify;

pub use complex::{subcomplex_union_intersection, ChainBoundary, Complex, ComplexError, Simplex, VertexId};
pub use geometry::{
    apply_isometry, external_angle, intrinsic_volumes, open_intrinsic_volumes,
    open_intrinsic_volumes_by_inclusion_exclusion, point_simplex_distance, sample_isometry, simplex_volume,
    steiner_polynomial, tube_volume_mc, unit_ball_volume, Embedding, GeometryError, IntrinsicVolumeVector,
    IsometrySpec, SimplexVolume, TubeEstimate,
};
pub use mc::{Estimate, MonteCarloConfig, Provenance};
pub use simplicial_map::{
    chain_matrix, orientation_coefficient, validate_map, AdmissiblePair, ChainMapMatrix, MapError, SelfMap,
};
pub use valuations::{
    evaluate_linear_valuation, fixed_point_witnesses, hadwiger_decompose, hadwiger_decompose_features,
    lefschetz_volume, lefschetz_volume_on, lefschetz_volume_trace, lefschetz_volumes, lefschetz_volumes_trace,
    open_valuation, Decomposition, DiagonalVolumeMatrix, LefschetzVolumeVector, ValuationError, ValuationSpec,
    VolumeTable,
};
