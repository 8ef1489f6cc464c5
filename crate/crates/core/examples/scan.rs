//! Check both conjectures over every labelled graph on up to five vertices,
//! then over a seeded sample on seven.

use eqcol::scan::{scan_conjecture, Conjecture, ScanConfig, ScanMode};

fn main() {
    let configs = [
        ScanConfig::new(Conjecture::Evac, 5, ScanMode::Exhaustive),
        ScanConfig::new(Conjecture::Edc, 5, ScanMode::Exhaustive),
        ScanConfig::new(Conjecture::Edc, 7, ScanMode::Sample { count: 200 }),
    ];
    for cfg in configs {
        let report = scan_conjecture(&cfg).unwrap();
        println!(
            "{:?} {} n <= {}: {} graphs, {} instances, {} counterexamples",
            cfg.conjecture,
            cfg.mode,
            cfg.n_max,
            report.graphs_checked,
            report.instances_checked,
            report.counterexamples.len()
        );
        for ce in &report.counterexamples {
            println!("  d = {} k = {}\n{}", ce.d, ce.k, ce.dimacs);
        }
    }
}
