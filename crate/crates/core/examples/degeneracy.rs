//! Peeling orders, cores, and orderings that minimise `p`.

use eqcol::degeneracy::{assemble_min_p_ordering, d_core, is_degenerate, ordering_p, peel_order};
use eqcol::Graph;

fn main() {
    // a 5-cycle with a pendant path hanging off vertex 0
    let g = Graph::new(
        8,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (5, 6),
            (6, 7),
        ],
    )
    .unwrap();

    for d in 0..=2 {
        println!("{d}-degenerate: {}", is_degenerate(&g, d));
    }
    println!("2-core: {:?}", d_core(&g, 2).iter().collect::<Vec<_>>());

    match peel_order(&g, 1) {
        Ok(order) => println!("1-degenerate order: {order:?}"),
        Err(e) => println!("not 1-degenerate, witness {:?}", e.witness),
    }

    let cert = assemble_min_p_ordering(&g, 2).unwrap();
    println!("d = 2 ordering {:?}, p = {}", cert.ordering, cert.p);
    println!("V* = {:?}", cert.vstar.iter().collect::<Vec<_>>());

    let naive: Vec<usize> = (0..g.n()).collect();
    println!("identity ordering p = {:?}", ordering_p(&g, &naive, 2));
}
