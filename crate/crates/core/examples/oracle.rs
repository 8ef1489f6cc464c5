//! Exact feasibility of small named instances.

use eqcol::{oracle_find, Graph};

fn main() {
    let graphs = [
        ("K_5", Graph::complete(5)),
        ("K_{3,3}", Graph::complete_bipartite(3, 3)),
        ("petersen", Graph::petersen()),
        ("C_7", Graph::cycle(7)),
    ];
    for (name, g) in &graphs {
        for d in 0..=2 {
            let feasible: Vec<usize> = (1..=g.n())
                .filter(|&k| oracle_find(g, d, k).feasible)
                .collect();
            println!("{name:9} d = {d}: feasible k = {feasible:?}");
        }
    }

    let verdict = oracle_find(&Graph::complete(5), 1, 3);
    let witness = verdict.witness.expect("K_5 splits into 3 forests");
    println!(
        "K_5 into 3 forests: {:?} ({} nodes)",
        witness.assignment(),
        verdict.nodes_explored
    );
}
