//! Split graphs into equitably many induced forests (`d = 1`).

use eqcol::{solve, Graph, SolveConfig, SolveOutcome};

fn main() {
    let graphs = [
        ("petersen", Graph::petersen()),
        ("K_6", Graph::complete(6)),
        ("K_{4,4}", Graph::complete_bipartite(4, 4)),
        ("C_13", Graph::cycle(13)),
    ];
    for (name, g) in graphs {
        // smallest k the solver is guaranteed to handle at d = 1
        let k = g.max_degree() + 1;
        let run = solve(&g, &SolveConfig::new(1, k)).unwrap();
        match run.outcome {
            SolveOutcome::Solved { colouring } => {
                println!("{name:8} k = {k}: {:?}", colouring.sizes());
                for i in 0..k {
                    println!("    class {i}: {:?}", colouring.class(i));
                }
            }
            other => println!("{name:8} k = {k}: {other:?}"),
        }
    }
}
