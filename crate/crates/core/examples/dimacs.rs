//! Read and write DIMACS edge format.

use eqcol::dimacs::{parse_dimacs, serialize_dimacs};
use eqcol::Graph;

const TEXT: &str = "c a 4-wheel
p edge 5 8
e 1 2
e 2 3
e 3 4
e 4 1
e 5 1
e 5 2
e 5 3
e 5 4
";

fn main() {
    let g = parse_dimacs(TEXT).unwrap();
    println!("n = {}, m = {}, delta = {}", g.n(), g.m(), g.max_degree());
    print!("{}", serialize_dimacs(&g));

    assert_eq!(
        parse_dimacs(&serialize_dimacs(&Graph::petersen())).unwrap(),
        Graph::petersen()
    );

    if let Err(e) = parse_dimacs("p edge 2 1\ne 1 3\n") {
        println!("rejected: {e}");
    }
}
