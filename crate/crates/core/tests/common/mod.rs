#![allow(dead_code)]

use fgc::io::{gen_random, GenParams};
use fgc::FgcInstance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded random instances with `n <= max_n`, `m <= max_m`, `p <= 3`, `q <= 4`.
/// Candidates whose repaired edge set grows past `max_m` are skipped.
pub fn corpus(count: usize, max_n: usize, max_m: usize, seed: u64) -> Vec<FgcInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut candidate = 0u64;
    while out.len() < count {
        candidate += 1;
        let n = rng.random_range(2..=max_n);
        let m = rng.random_range((n - 1).max(1)..=max_m);
        let params = GenParams {
            n,
            m,
            safe_fraction: [0.25, 0.5, 0.75][rng.random_range(0..3)],
            cost_range: (1.0, 10.0),
            p: rng.random_range(1..=3),
            q: rng.random_range(0..=4),
            seed: seed.wrapping_mul(1_000_003).wrapping_add(candidate),
        };
        if let Ok(inst) = gen_random(&params) {
            if inst.edge_count() <= max_m {
                out.push(inst);
            }
        }
    }
    out
}

/// The standard desk-scale corpus: 500 instances, `n <= 10`, `m <= 18`.
pub fn standard() -> Vec<FgcInstance> {
    corpus(500, 10, 18, 20_240_611)
}
