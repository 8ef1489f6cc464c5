//! Equitable proper colouring of a random graph with `Δ + 1` colours.

use eqcol::generate::random_bounded_degree_graph;
use eqcol::{solve, verify_colouring, SolveConfig, SolveOutcome};

fn main() {
    let g = random_bounded_degree_graph(200, 6, 0.8, 42);
    let k = g.max_degree() + 1;
    let run = solve(&g, &SolveConfig::new(0, k)).expect("k is positive");
    let SolveOutcome::Solved { colouring } = run.outcome else {
        panic!("no colouring: {:?}", run.outcome);
    };
    assert!(verify_colouring(&g, &colouring, 0).unwrap().valid);
    println!(
        "n = {}, m = {}, delta = {}, k = {k}",
        g.n(),
        g.m(),
        g.max_degree()
    );
    println!("class sizes: {:?}", colouring.sizes());
    println!(
        "recolourings {}, path moves {}, stuck {}",
        run.stats.recolourings, run.stats.path_moves, run.stats.stuck_states
    );
}
