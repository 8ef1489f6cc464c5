//! The move digraph of a near-equitable forest colouring and one path move.

use eqcol::colouring::{classify, Colouring};
use eqcol::digraph::{build_move_digraph, move_along_path, partition_state};
use eqcol::Graph;

fn main() {
    let g = Graph::petersen();
    // sizes 5, 3, 2: one too many in class 0, one too few in class 2
    let c = Colouring::new(3, vec![0, 0, 1, 0, 1, 0, 2, 1, 0, 2]).unwrap();
    println!("sizes {:?}, {:?}", c.sizes(), classify(&c));

    let dg = build_move_digraph(&g, &c, 1);
    for arc in dg.arcs() {
        println!(
            "  {} -> {} via vertex {}",
            arc.from, arc.to, arc.representative
        );
    }

    let state = partition_state(&dg, &c);
    println!(
        "accessible {:?}, inaccessible {:?}",
        state.accessible_classes(),
        state.inaccessible_classes()
    );

    let sinks: Vec<bool> = (0..c.k()).map(|i| c.size(i) == c.min_size()).collect();
    let big: Vec<usize> = (0..c.k()).filter(|&i| c.size(i) == c.max_size()).collect();
    match dg.shortest_path(&big, &sinks, &vec![true; c.k()]) {
        Some(path) => {
            let next = move_along_path(&g, &c, 1, &path, &dg).unwrap();
            println!(
                "path {path:?} gives sizes {:?}, {:?}",
                next.sizes(),
                classify(&next)
            );
        }
        None => println!("no path from a largest class to a smallest one"),
    }
}
