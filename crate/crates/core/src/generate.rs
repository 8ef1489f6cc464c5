//! Seeded random graphs with a degree cap.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Shuffles all vertex pairs, then keeps each with probability `density`
/// provided neither endpoint has reached `delta_max`.
pub fn random_bounded_degree_graph(n: usize, delta_max: usize, density: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    let density = density.clamp(0.0, 1.0);
    let mut deg = vec![0usize; n];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if !rng.gen_bool(density) {
            continue;
        }
        if deg[u] < delta_max && deg[v] < delta_max {
            deg[u] += 1;
            deg[v] += 1;
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).expect("generated pairs are simple")
}

/// Stream of independent seeds derived from one base seed.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    // splitmix64 step
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
