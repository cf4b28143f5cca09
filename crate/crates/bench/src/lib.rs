//! Seeded inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tamelift::tame_reps::{compatibility_kernel, sample_compatible};
use tamelift::{IntMatrix, Preset, RootDatum, TameInertialPair};

/// `count` compatible pairs per Weyl element with `w^f = 1`.
pub fn sample_pairs(preset: Preset, q: u64, f: u32, count: usize, seed: u64) -> (RootDatum, Vec<TameInertialPair>) {
    let d = RootDatum::preset(preset).expect("supported preset");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for w in d.weyl_group().into_iter().filter(|w| w.pow(u64::from(f)).is_identity()) {
        let k = compatibility_kernel(&w, q, f).expect("small modulus");
        for _ in 0..count {
            let v = sample_compatible(&k, &mut rng);
            pairs.push(TameInertialPair::new(&d, q, f, v, w.clone()).expect("shapes agree"));
        }
    }
    (d, pairs)
}

/// A square matrix with entries in `[-bound, bound]`.
pub fn random_matrix(n: usize, bound: i64, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_rows(&rows).expect("rectangular")
}
