use approx::assert_abs_diff_eq;
use lefvol_core::io::ComplexFile;
use lefvol_core::valuations::{lefschetz_volumes_trace_with, lefschetz_volumes_with};
use lefvol_core::verify::{generate_random_pair, random_invariant_subcomplex, random_simplex, RandomComplexConfig};
use lefvol_core::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MC: MonteCarloConfig = MonteCarloConfig {
    samples: 10_000,
    seed: 1,
};

fn pair(seed: u64, ambient: usize) -> AdmissiblePair {
    generate_random_pair(&RandomComplexConfig {
        max_vertices: 10,
        max_dim: ambient,
        ambient_dim: ambient,
        edge_length_scale: 1.0,
        seed,
    })
    .unwrap()
}

fn euler(x: &Complex) -> i64 {
    (0..=x.dim().unwrap_or(0))
        .map(|q| (-1i64).pow(q as u32) * x.count(q) as i64)
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn boundary_of_boundary_vanishes(seed in any::<u64>(), n in 1usize..=3) {
        let p = pair(seed, n);
        let x = p.complex();
        for q in 2..=x.dim().unwrap_or(0) {
            let dd = x.boundary_matrix(q - 1).matrix * x.boundary_matrix(q).matrix;
            prop_assert!(dd.iter().all(|v| *v == 0));
        }
    }

    #[test]
    fn closure_is_idempotent_and_counts_add(seed in any::<u64>()) {
        let p = pair(seed, 3);
        let x = p.complex();
        prop_assert_eq!(&Complex::closure(x.iter().cloned()), x);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_invariant_subcomplex(&p, &mut rng);
        let b = random_invariant_subcomplex(&p, &mut rng);
        let (u, i) = subcomplex_union_intersection(&a, &b);
        prop_assert!(u.is_subcomplex_of(x));
        prop_assert!(i.is_subcomplex_of(&a) && i.is_subcomplex_of(&b));
        for q in 0..=3 {
            prop_assert_eq!(u.count(q) + i.count(q), a.count(q) + b.count(q));
        }
        prop_assert_eq!(euler(&u) + euler(&i), euler(&a) + euler(&b));
    }

    #[test]
    fn chain_maps_commute_with_boundary(seed in any::<u64>(), n in 1usize..=3) {
        let p = pair(seed, n);
        let x = p.complex();
        for q in 1..=x.dim().unwrap_or(0) {
            let d = x.boundary_matrix(q).matrix;
            prop_assert_eq!(&d * p.chain_matrix(q).matrix, p.chain_matrix(q - 1).matrix * &d);
        }
    }

    #[test]
    fn euler_characteristic_term_is_lefschetz_number(seed in any::<u64>(), n in 1usize..=3) {
        let p = pair(seed, n);
        let v = lefschetz_volumes(&p, &MC).unwrap();
        let dim = p.complex().dim().unwrap_or(0);
        let lefschetz: i64 = (0..=dim).map(|q| (-1i64).pow(q as u32) * p.chain_matrix(q).trace()).sum();
        prop_assert!((v.get(0) - lefschetz as f64).abs() < 1e-12);
    }

    #[test]
    fn direct_and_trace_paths_agree(seed in any::<u64>(), n in 1usize..=3) {
        let p = pair(seed, n);
        let table = VolumeTable::compute(&p, &MC).unwrap();
        let a = lefschetz_volumes_with(&p, &table);
        let b = lefschetz_volumes_trace_with(&p, &table);
        for k in 0..=n {
            prop_assert!((a.get(k) - b.get(k)).abs() <= 1e-9, "k={} {} {}", k, a.get(k), b.get(k));
        }
    }

    #[test]
    fn volumes_are_additive_on_invariant_subcomplexes(seed in any::<u64>(), n in 1usize..=3) {
        let p = pair(seed, n);
        let table = VolumeTable::compute(&p, &MC).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa5a5);
        let a = random_invariant_subcomplex(&p, &mut rng);
        let b = random_invariant_subcomplex(&p, &mut rng);
        let (u, i) = subcomplex_union_intersection(&a, &b);
        for k in 0..=n {
            let v = |s: &Complex| lefschetz_volume_on(&p, &table, s, k).unwrap().value;
            prop_assert!((v(&a) + v(&b) - v(&u) - v(&i)).abs() <= 1e-9);
        }
    }

    #[test]
    fn identity_volumes_are_intrinsic_volumes(seed in any::<u64>(), n in 1usize..=3) {
        // Independent oracle: inclusion-exclusion over closed simplices is the
        // same as summing the sign rule over open simplices.
        let p = pair(seed, n);
        let id = AdmissiblePair::identity(p.complex().clone(), p.embedding().clone()).unwrap();
        let v = lefschetz_volumes(&id, &MC).unwrap();
        for k in 0..=n {
            let mut sum = 0.0;
            for s in id.complex().iter() {
                sum += open_intrinsic_volumes(s, id.embedding(), &MC).unwrap().get(k);
            }
            prop_assert!((v.get(k) - sum).abs() <= 1e-9);
        }
        prop_assert!((v.get(0) - euler(id.complex()) as f64).abs() < 1e-12);
    }

    #[test]
    fn volumes_survive_isometries(seed in any::<u64>(), phi_seed in any::<u64>(), n in 1usize..=3) {
        let p = pair(seed, n);
        let phi = sample_isometry(n, phi_seed, 5.0);
        let moved = p.with_embedding(apply_isometry(p.embedding(), &phi)).unwrap();
        let a = lefschetz_volumes(&p, &MC).unwrap();
        let b = lefschetz_volumes(&moved, &MC).unwrap();
        for k in 0..=n {
            prop_assert!((a.get(k) - b.get(k)).abs() <= 1e-9);
        }
    }

    #[test]
    fn complex_files_round_trip(seed in any::<u64>(), n in 1usize..=3) {
        let p = pair(seed, n);
        let file = ComplexFile::from_pair(&p);
        let parsed = ComplexFile::from_json(&file.to_json(), "roundtrip").unwrap();
        prop_assert_eq!(&parsed, &file);
        prop_assert_eq!(parsed.pair(None).unwrap(), p);
    }

    #[test]
    fn open_simplex_paths_agree_up_to_dim_3(seed in any::<u64>(), dim in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, e) = random_simplex(dim, &mut rng).unwrap();
        let a = open_intrinsic_volumes(&s, &e, &MC).unwrap();
        let b = open_intrinsic_volumes_by_inclusion_exclusion(&s, &e, &MC).unwrap();
        for k in 0..=dim {
            prop_assert!((a.get(k) - b.get(k)).abs() <= 1e-9);
        }
    }

    #[test]
    fn intrinsic_volumes_scale_with_degree(seed in any::<u64>(), dim in 1usize..=3, lambda in 0.1f64..5.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, e) = random_simplex(dim, &mut rng).unwrap();
        let scaled = e.map_points(|p| p.iter().map(|x| lambda * x).collect());
        let a = intrinsic_volumes(&s, &e, &MC).unwrap();
        let b = intrinsic_volumes(&s, &scaled, &MC).unwrap();
        for k in 0..=dim {
            let want = lambda.powi(k as i32) * a.get(k);
            prop_assert!((b.get(k) - want).abs() <= 1e-9 * want.abs().max(1.0), "k={} {} {}", k, b.get(k), want);
        }
    }

    #[test]
    fn triangle_vertex_angles_sum_to_one(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, e) = random_simplex(2, &mut rng).unwrap();
        let sum: f64 = s
            .vertices()
            .iter()
            .map(|v| external_angle(&Simplex::vertex(v.clone()), &s, &e, &MC).unwrap().value)
            .sum();
        prop_assert!((sum - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn distance_is_zero_inside_and_bounded_by_vertices(
        seed in any::<u64>(),
        weights in prop::collection::vec(0.01f64..1.0, 4),
        offset in prop::collection::vec(-3.0f64..3.0, 3),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, e) = random_simplex(3, &mut rng).unwrap();
        let total: f64 = weights.iter().sum();
        let pts = e.points(&s).unwrap();
        let inside: Vec<f64> = (0..3)
            .map(|i| pts.iter().zip(&weights).map(|(p, w)| p[i] * w / total).sum())
            .collect();
        prop_assert!(point_simplex_distance(&inside, &s, &e).unwrap() < 1e-9);
        let d = point_simplex_distance(&offset, &s, &e).unwrap();
        for p in &pts {
            let to_vertex = p.iter().zip(&offset).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            prop_assert!(d <= to_vertex + 1e-12);
        }
    }

    #[test]
    fn simplex_volume_matches_edge_determinant(seed in any::<u64>(), dim in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, e) = random_simplex(dim, &mut rng).unwrap();
        // Independent oracle: |det| of the edge matrix over dim!.
        let pts = e.points(&s).unwrap();
        let m = DMatrix::from_fn(dim, dim, |i, j| pts[j + 1][i] - pts[0][i]);
        let factorial: f64 = (1..=dim).map(|i| i as f64).product();
        let expected = m.determinant().abs() / factorial;
        assert_abs_diff_eq!(simplex_volume(&s, &e).unwrap().volume, expected, epsilon = 1e-9 * expected.max(1.0));
        prop_assert!(!simplex_volume(&s, &e).unwrap().degenerate);
    }
}
