//! Seeded bounded-degree random graphs.

use eqcol::generate::{derive_seed, random_bounded_degree_graph};

fn main() {
    for i in 0..5 {
        let seed = derive_seed(2024, i);
        let g = random_bounded_degree_graph(100, 5, 0.7, seed);
        let mut hist = [0usize; 6];
        for v in 0..g.n() {
            hist[g.degree(v)] += 1;
        }
        println!(
            "seed {seed:#018x}: m = {:3}, degree histogram {hist:?}",
            g.m()
        );
    }
    let a = random_bounded_degree_graph(50, 4, 0.5, 1);
    let b = random_bounded_degree_graph(50, 4, 0.5, 1);
    assert_eq!(a, b);
}
