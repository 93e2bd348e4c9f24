//! Verifier verdicts are invariant under a simultaneous orthogonal
//! transformation of every embedded vector.

use dgemb::construct::{dag_translational, svd_construct};
use dgemb::embed::{
    verify_distance, verify_similarity, verify_translational, DistanceEmbedding,
    SimilarityEmbedding, Threshold, TranslationalEmbedding,
};
use dgemb::graph::{generate, Family};
use dgemb::linalg::{random_rotation, rotate_vectors};
use dgemb::rng::Rng;

#[test]
fn distance_and_similarity_verdicts_survive_rotations() {
    let mut rng = Rng::new(4242);
    for seed in 0..20 {
        let g = generate(&Family::RandomGnp { n: 8, p: 0.35 }, seed).unwrap();
        let (dist, sim) = svd_construct(&g).unwrap();
        assert!(verify_distance(&g, &dist).unwrap().ok);
        assert!(verify_similarity(&g, &sim).unwrap().ok);

        let q = random_rotation(dist.dim(), &mut rng);
        let rotated_dist = DistanceEmbedding::new(
            rotate_vectors(&q, &dist.phi_out),
            rotate_vectors(&q, &dist.phi_in),
            dist.threshold.clone(),
        )
        .unwrap();
        assert!(
            verify_distance(&g, &rotated_dist).unwrap().ok,
            "seed {seed}"
        );

        let rotated_sim = SimilarityEmbedding::new(
            rotate_vectors(&q, &sim.phi_l),
            rotate_vectors(&q, &sim.phi_r),
            sim.threshold,
        )
        .unwrap();
        assert!(
            verify_similarity(&g, &rotated_sim).unwrap().ok,
            "seed {seed}"
        );
    }
}

#[test]
fn failing_verdicts_survive_rotations_too() {
    let mut rng = Rng::new(7);
    // A deliberately wrong embedding stays wrong after rotation, with the
    // same witness.
    let g = generate(&Family::Path { n: 3 }, 0).unwrap();
    let e = DistanceEmbedding::new(
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]],
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]],
        Threshold::Uniform(1.0),
    )
    .unwrap();
    let before = verify_distance(&g, &e).unwrap();
    assert!(!before.ok);
    let q = random_rotation(2, &mut rng);
    let rotated = DistanceEmbedding::new(
        rotate_vectors(&q, &e.phi_out),
        rotate_vectors(&q, &e.phi_in),
        e.threshold.clone(),
    )
    .unwrap();
    let after = verify_distance(&g, &rotated).unwrap();
    assert!(!after.ok);
    assert_eq!(before.witness, after.witness);
}

#[test]
fn translational_verdict_survives_rotations() {
    let mut rng = Rng::new(99);
    for seed in 0..15 {
        let g = generate(&Family::RandomDag { n: 8, p: 0.3 }, seed).unwrap();
        let e = dag_translational(&g).unwrap();
        assert!(verify_translational(&g, &e).unwrap().ok);

        let q = random_rotation(e.dim(), &mut rng);
        let rotated = TranslationalEmbedding::new(
            rotate_vectors(&q, &e.phi),
            rotate_vectors(&q, std::slice::from_ref(&e.z))
                .pop()
                .unwrap(),
            e.thresholds.clone(),
        )
        .unwrap();
        assert!(
            verify_translational(&g, &rotated).unwrap().ok,
            "seed {seed}"
        );
    }
}
