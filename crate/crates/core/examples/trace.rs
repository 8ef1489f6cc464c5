//! Trace forest colourings below the guaranteed range until one gets stuck,
//! then show its moves and the structural checks on each stuck state.

use eqcol::generate::{derive_seed, random_bounded_degree_graph};
use eqcol::solver::MoveKind;
use eqcol::{solve, SolveConfig};

fn main() {
    for i in 0..2000 {
        let seed = derive_seed(7, i);
        let g = random_bounded_degree_graph(40, 7, 0.9, seed);
        let k = (g.max_degree() + 1).div_ceil(2).saturating_sub(2).max(1);
        let cfg = SolveConfig::new(1, k)
            .with_diagnostics(true)
            .with_oracle_fallback(0);
        let run = solve(&g, &cfg).unwrap();
        if run.diagnostics.is_empty() {
            continue;
        }

        println!(
            "seed {seed:#x}: n = {}, delta = {}, k = {k}",
            g.n(),
            g.max_degree()
        );
        println!("solved: {}", run.outcome.is_solved());
        for event in run.trace.iter().filter(|e| e.kind != MoveKind::Insert) {
            let moved: Vec<_> = event
                .changes
                .iter()
                .map(|c| (c.vertex, c.from, c.to))
                .collect();
            match (event.measure_before, event.measure_after) {
                (Some(a), Some(b)) => println!("  {:?} {moved:?} {a:?} -> {b:?}", event.kind),
                _ => println!("  {:?} {moved:?}", event.kind),
            }
        }
        for report in &run.diagnostics {
            let failed: Vec<_> = report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| &c.id)
                .collect();
            println!(
                "stuck state: {} checks, failed {failed:?}",
                report.checks.len()
            );
        }
        return;
    }
    println!("no stuck state met");
}
