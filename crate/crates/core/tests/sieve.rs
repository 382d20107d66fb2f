//! Sieve against independent oracles at larger scale than the unit tests.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cubefermat::theta::{batch_counts, count_reps, TernaryForm, Q1, Q2, Q3, Q4};

const FORMS: [TernaryForm; 4] = [Q1, Q2, Q3, Q4];

#[test]
fn shards_do_not_change_counts() {
    for q in FORMS {
        let one = batch_counts(&q, 100_000, 1).unwrap();
        assert_eq!(one, batch_counts(&q, 100_000, 8).unwrap());
        assert_eq!(one, batch_counts(&q, 100_000, 3).unwrap());
    }
}

#[test]
fn random_points_agree_with_direct_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tables: Vec<_> = FORMS.iter().map(|q| batch_counts(q, 200_000, 2).unwrap()).collect();
    for _ in 0..200 {
        let n = rng.gen_range(0..=200_000u64);
        for (q, t) in FORMS.iter().zip(&tables) {
            assert_eq!(t[n as usize] as u64, count_reps(q, n), "n={n}");
        }
    }
}

#[test]
fn lattice_point_count_matches_ellipsoid_volume() {
    // #{v : ½vᵀAv ≤ N} ≈ (4/3)π(2N)^{3/2}/√det A
    let n = 1_000_000u64;
    for q in FORMS {
        let total: u64 = batch_counts(&q, n, 1).unwrap().iter().map(|&c| c as u64).sum();
        let volume = 4.0 / 3.0 * PI * (2.0 * n as f64).powf(1.5) / (q.det() as f64).sqrt();
        let rel = (total as f64 - volume).abs() / volume;
        assert!(rel < 0.02, "{q:?}: {total} vs {volume:.0}");
    }
}
