//! Equitable d-degenerate colourings of bounded-degree graphs.
//!
//! A k-colouring is *equitable* when class sizes differ by at most one and
//! *d-degenerate* when every class induces a d-degenerate graph (for `d = 1`
//! every class is a forest, for `d = 0` the colouring is proper).
//!
//! The solver inserts edges one at a time, keeping an equitable colouring of
//! each prefix graph. When an insertion breaks a class, one endpoint is
//! recoloured, leaving a *near-equitable* colouring that is then repaired by
//! shifting vertices along paths of the [move digraph](digraph) on colour
//! classes, falling back to a family of exchange moves when no path exists.
//!
//! ```
//! use eqcol::{solve, Graph, SolveConfig, SolveOutcome};
//!
//! let g = Graph::petersen();
//! let run = solve(&g, &SolveConfig::new(1, 3)).unwrap();
//! let SolveOutcome::Solved { colouring: c } = run.outcome else { panic!() };
//! let mut sizes = c.sizes();
//! sizes.sort();
//! assert_eq!(sizes, [3, 3, 4]);
//! ```
//!
//! Small instances can be settled exactly with [`oracle::oracle_find`], and
//! [`scan`] runs the oracle over whole graph families. See the crate's
//! `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod colouring;
pub mod degeneracy;
pub mod diagnostics;
pub mod digraph;
pub mod dimacs;
pub mod error;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod scan;
pub mod solver;

pub use colouring::{classify, verify_colouring, Colouring, ColouringClass};
pub use degeneracy::{assemble_min_p_ordering, compute_vstar, peel_order};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use oracle::{oracle_find, OracleVerdict};
pub use solver::{solve, SolveConfig, SolveOutcome, SolveRun};
