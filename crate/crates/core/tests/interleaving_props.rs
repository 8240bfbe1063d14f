//! Interleaving identities and the stability drivers on random inputs.

use geomplex::builders::rips_filtration;
use geomplex::field::PrimeField;
use geomplex::interleaving::{commutes_with_shifts, induced_homology_map, verify_interleaving, SubordinateMap};
use geomplex::metric::{distortion, Correspondence, DissimilarityMatrix, MetricKind, PointCloud};
use geomplex::suite::{self, trial_rng};
use proptest::prelude::*;

fn plane(pts: &[(f64, f64)]) -> DissimilarityMatrix {
    PointCloud::new(pts.iter().map(|&(x, y)| vec![x, y]).collect(), MetricKind::Euclidean).unwrap().to_matrix()
}

fn space(max: usize) -> impl Strategy<Value = DissimilarityMatrix> {
    prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 1..=max).prop_map(|p| plane(&p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_trials_hold(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let r = suite::interleaving_trial(&mut trial_rng(seed, 0), PrimeField::new(p).unwrap()).unwrap();
        prop_assert!(r.passed, "{}", r.details);
    }

    #[test]
    fn induced_maps_commute_with_shifts(dx in space(6), dy in space(6), seed in any::<u64>()) {
        let (s, t) = (rips_filtration(&dx, 2), rips_filtration(&dy, 2));
        let c = Correspondence::full(dx.len(), dy.len());
        let eps = distortion(&c, &dx, &dy).unwrap();
        let f = SubordinateMap::random(&c, &mut trial_rng(seed, 1)).unwrap();
        let map = induced_homology_map(&f, &s, &t, eps, PrimeField::Z2).unwrap();
        prop_assert!(commutes_with_shifts(&map, &s, &t, PrimeField::Z2).unwrap());
    }

    #[test]
    fn nearest_point_graph_interleaves(dx in space(6), dy in space(6)) {
        // any correspondence works at its own distortion
        let (s, t) = (rips_filtration(&dx, 2), rips_filtration(&dy, 2));
        let mut pairs: Vec<(usize, usize)> = (0..dx.len()).map(|i| (i, i % dy.len())).collect();
        pairs.extend((0..dy.len()).map(|j| (j % dx.len(), j)));
        let c = Correspondence::new(dx.len(), dy.len(), pairs).unwrap();
        let eps = distortion(&c, &dx, &dy).unwrap();
        let v = verify_interleaving(&c, &s, &t, eps, PrimeField::Z2, 1).unwrap();
        prop_assert!(v.applicable && v.verified, "{v:?}");
    }
}

#[test]
fn too_small_eps_is_detected() {
    let dx = plane(&[(0.0, 0.0), (1.0, 0.0)]);
    let dy = plane(&[(0.0, 0.0), (3.0, 0.0)]);
    let (s, t) = (rips_filtration(&dx, 1), rips_filtration(&dy, 1));
    let v = verify_interleaving(&Correspondence::identity(2), &s, &t, 0.5, PrimeField::Z2, 0).unwrap();
    assert!(!v.applicable && v.obstruction.is_some());
}

#[test]
fn batch_drivers_other_field() {
    let f = PrimeField::new(3).unwrap();
    for batch in [
        suite::rips_stability_trials(30, 5, f),
        suite::cech_stability_trials(30, 5, f),
        suite::ambient_cech_trials(30, 5, 8, f),
        suite::witness_stability_trials(30, 5, f),
        suite::dowker_trials(20, 5, 5, 6, 2, f),
    ] {
        let reports = batch.unwrap();
        assert!(reports.iter().all(|r| r.passed), "{:?}", reports.iter().find(|r| !r.passed));
        assert!(reports.iter().enumerate().all(|(i, r)| r.trial == Some(i as u64) && r.seed == Some(5)));
    }
}

#[test]
fn nearest_neighbor_witness_correspondence() {
    // metric case: 2·dis(C) for the nearest-neighbour correspondence stays within 2·d_H
    use geomplex::complex::CrossDissimilarity;
    use geomplex::metric::{hausdorff_distance, nearest_neighbor_correspondence};
    let pts = [(0.0, 0.0), (1.0, 0.2), (0.3, 0.9), (0.1, 0.1), (0.9, 0.3), (0.35, 0.8), (0.5, 0.5)];
    let amb = plane(&pts);
    let (l, w, wp) = (vec![0, 1, 2], vec![3, 4, 5], vec![6, 3, 4]);
    let c = nearest_neighbor_correspondence(&w, &wp, &amb).unwrap();
    let lam = CrossDissimilarity::from_ambient(&l, &w, &amb).unwrap();
    let lam_p = CrossDissimilarity::from_ambient(&l, &wp, &amb).unwrap();
    let r = suite::verify_witness_stability(&lam, &lam_p, &c, 1, PrimeField::Z2).unwrap();
    assert!(r.passed);
    assert!(r.rhs <= 2.0 * hausdorff_distance(&w, &wp, &amb).unwrap() + 1e-9);
}
