//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use eqcol::colouring::{classify, verify_colouring, ColouringClass};
use eqcol::degeneracy::{compute_vstar, d_core, is_degenerate};
use eqcol::diagnostics::DiagnosticsReport;
use eqcol::generate::{derive_seed, random_bounded_degree_graph};
use eqcol::scan::{labelled_graph, scan_conjecture, Conjecture, ScanConfig, ScanMode};
use eqcol::{oracle_find, solve, Graph, SolveConfig, SolveOutcome};

// pinned sizes and limits
const SUITE1_GRAPHS: u64 = 1000;
const SUITE1_N_MAX: usize = 40;
const SUITE1_DELTA_MAX: usize = 8;
const SUITE1_LIMIT: Duration = Duration::from_secs(120);
const SUITE2_GRAPHS: u64 = 100;
const SUITE2_LIMIT: Duration = Duration::from_secs(120);
const ORACLE_GRAPHS: u64 = 500;
const ORACLE_N_MAX: usize = 8;
const SCAN_EXHAUSTIVE_N: usize = 6;
const SCAN_SAMPLE_N: usize = 10;
const SCAN_SAMPLE_COUNT: usize = 200;
const SCAN_LIMIT: Duration = Duration::from_secs(600);
const DEGENERACY_N: usize = 6;
const FACT_TRIALS: u64 = 1000;
const HARVEST_GRAPHS: u64 = 4000;
const SEED: u64 = 0x5eed_2024;

struct Verdict {
    pass: bool,
    detail: String,
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut stuck_reports: Vec<DiagnosticsReport> = Vec::new();
    let mut violations_seen = 0usize;

    let criteria: Vec<(&str, Verdict)> = vec![
        (
            "1 degenerate-bound suite",
            suite_degenerate(&mut stuck_reports, &mut violations_seen),
        ),
        (
            "2 forest suite",
            suite_forest(&mut stuck_reports, &mut violations_seen),
        ),
        ("3 oracle agreement", oracle_agreement()),
        ("4 named instances", named_instances()),
        ("5 conjecture scans", conjecture_scans()),
        (
            "6 structural diagnostics",
            structural(&stuck_reports, violations_seen),
        ),
        ("7 degeneracy module", degeneracy_module()),
        ("8 determinism", determinism()),
    ];

    let mut all = true;
    for (name, verdict) in &criteria {
        all &= verdict.pass;
        println!(
            "criterion {name}: {} ({})",
            if verdict.pass { "PASS" } else { "FAIL" },
            verdict.detail
        );
    }
    println!(
        "acceptance: {} in {:.1}s",
        if all { "all criteria pass" } else { "FAILURES" },
        start.elapsed().as_secs_f64()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

enum Instance {
    Solved,
    Failed(String),
}

/// Solves with diagnostics on and checks the witness.
fn run_instance(
    g: &Graph,
    d: usize,
    k: usize,
    label: &str,
) -> (Instance, Vec<DiagnosticsReport>, bool) {
    let cfg = SolveConfig::new(d, k).with_diagnostics(true);
    let run = solve(g, &cfg).expect("k >= 1");
    let reports = run.diagnostics;
    let violated = matches!(run.outcome, SolveOutcome::TheoryViolation { .. });
    let result = match &run.outcome {
        SolveOutcome::Solved { colouring } => {
            let report = verify_colouring(g, colouring, d).unwrap();
            if !report.valid {
                Instance::Failed(format!(
                    "{label}: invalid classes {:?}",
                    report.failing_classes
                ))
            } else if classify(colouring) != ColouringClass::Equitable {
                Instance::Failed(format!("{label}: sizes {:?}", colouring.sizes()))
            } else {
                Instance::Solved
            }
        }
        SolveOutcome::TheoryViolation { report } => {
            Instance::Failed(format!("{label}: theory violation: {}", report.reason))
        }
        other => Instance::Failed(format!("{label}: {}", outcome_name(other))),
    };
    (result, reports, violated)
}

fn outcome_name(o: &SolveOutcome) -> &'static str {
    match o {
        SolveOutcome::Solved { .. } => "solved",
        SolveOutcome::InfeasibleProven => "infeasible",
        SolveOutcome::GaveUp { .. } => "gave up",
        SolveOutcome::TheoryViolation { .. } => "theory violation",
    }
}

fn summarise(
    results: Vec<(Instance, Vec<DiagnosticsReport>, bool)>,
    stuck: &mut Vec<DiagnosticsReport>,
    violations: &mut usize,
    elapsed: Duration,
    limit: Duration,
) -> Verdict {
    let total = results.len();
    let mut failures = Vec::new();
    for (instance, reports, violated) in results {
        stuck.extend(reports);
        *violations += usize::from(violated);
        if let Instance::Failed(why) = instance {
            failures.push(why);
        }
    }
    let solved = total - failures.len();
    let in_time = elapsed <= limit;
    let mut detail = format!(
        "{solved}/{total} solved, {:.1}s of {}s",
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; first failure {first}"));
    }
    Verdict {
        pass: failures.is_empty() && in_time,
        detail,
    }
}

fn suite_degenerate(stuck: &mut Vec<DiagnosticsReport>, violations: &mut usize) -> Verdict {
    let start = Instant::now();
    let results: Vec<_> = (0..SUITE1_GRAPHS)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(SEED, i);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..=SUITE1_N_MAX);
            let cap = rng.gen_range(0..=SUITE1_DELTA_MAX);
            let density = rng.gen_range(0.05..=1.0);
            let d = rng.gen_range(1..=3);
            let g = random_bounded_degree_graph(n, cap, density, rng.gen());
            let k = g.max_degree().div_ceil(d) + 1;
            run_instance(&g, d, k, &format!("graph {i} (n={n}, d={d}, k={k})"))
        })
        .collect();
    summarise(results, stuck, violations, start.elapsed(), SUITE1_LIMIT)
}

fn suite_forest(stuck: &mut Vec<DiagnosticsReport>, violations: &mut usize) -> Verdict {
    let start = Instant::now();
    let results: Vec<_> = (0..2 * SUITE2_GRAPHS)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(SEED ^ 0xf0e5, i);
            let (n, cap, k) = if i < SUITE2_GRAPHS {
                (300, 3, 3)
            } else {
                (48, 2, 2)
            };
            let g = random_bounded_degree_graph(n, cap, 0.9, seed);
            run_instance(&g, 1, k, &format!("graph {i} (n={n}, k={k})"))
        })
        .collect();
    summarise(results, stuck, violations, start.elapsed(), SUITE2_LIMIT)
}

fn oracle_agreement() -> Verdict {
    let mismatches: Vec<String> = (0..ORACLE_GRAPHS)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(SEED ^ 0x0eac, i));
            let n = rng.gen_range(1..=ORACLE_N_MAX);
            let density = rng.gen_range(0.0..=1.0);
            let g = random_bounded_degree_graph(n, n, density, rng.gen());
            let mut out = Vec::new();
            for d in 0..=3 {
                for k in 1..=4 {
                    let cfg = SolveConfig::new(d, k).with_oracle_fallback(ORACLE_N_MAX);
                    let run = solve(&g, &cfg).unwrap();
                    let truth = oracle_find(&g, d, k).feasible;
                    let agrees = match &run.outcome {
                        SolveOutcome::Solved { colouring } => {
                            truth
                                && verify_colouring(&g, colouring, d).unwrap().valid
                                && classify(colouring) == ColouringClass::Equitable
                        }
                        SolveOutcome::InfeasibleProven => !truth,
                        _ => false,
                    };
                    if !agrees {
                        out.push(format!(
                            "graph {i} d={d} k={k}: solver {} oracle {truth}",
                            outcome_name(&run.outcome)
                        ));
                    }
                }
            }
            out
        })
        .collect();
    Verdict {
        pass: mismatches.is_empty(),
        detail: match mismatches.first() {
            None => format!("{} graphs x 16 (d, k) pairs agree", ORACLE_GRAPHS),
            Some(m) => format!("{} mismatches, first {m}", mismatches.len()),
        },
    }
}

fn named_instances() -> Verdict {
    let k33 = Graph::complete_bipartite(3, 3);
    let k5 = Graph::complete(5);
    let c5 = Graph::cycle(5);
    let cases = [
        ("K33 d=0 k=3", &k33, 0, 3, false),
        ("K33 d=0 k=2", &k33, 0, 2, true),
        ("K5 d=1 k=2", &k5, 1, 2, false),
        ("K5 d=1 k=3", &k5, 1, 3, true),
        ("C5 d=1 k=1", &c5, 1, 1, false),
    ];
    let mut wrong = Vec::new();
    for (name, g, d, k, expected) in cases {
        let oracle = oracle_find(g, d, k).feasible;
        let solver = solve(g, &SolveConfig::new(d, k))
            .unwrap()
            .outcome
            .is_solved();
        if oracle != expected || solver != expected {
            wrong.push(name);
        }
    }
    Verdict {
        pass: wrong.is_empty(),
        detail: if wrong.is_empty() {
            "5 exact verdicts from oracle and solver".into()
        } else {
            format!("wrong: {wrong:?}")
        },
    }
}

fn conjecture_scans() -> Verdict {
    let start = Instant::now();
    let evac = scan_conjecture(&ScanConfig::new(
        Conjecture::Evac,
        SCAN_EXHAUSTIVE_N,
        ScanMode::Exhaustive,
    ))
    .unwrap();
    let mut edc_cfg = ScanConfig::new(
        Conjecture::Edc,
        SCAN_SAMPLE_N,
        ScanMode::Sample {
            count: SCAN_SAMPLE_COUNT,
        },
    );
    edc_cfg.d_values = vec![0];
    edc_cfg.seed = SEED;
    let edc = scan_conjecture(&edc_cfg).unwrap();
    let elapsed = start.elapsed();
    let expected_graphs: u64 = (1..=SCAN_EXHAUSTIVE_N)
        .map(|n| 1u64 << (n * (n - 1) / 2))
        .sum();
    Verdict {
        pass: evac.clean()
            && edc.clean()
            && evac.graphs_checked == expected_graphs
            && edc.graphs_checked == SCAN_SAMPLE_COUNT as u64
            && elapsed <= SCAN_LIMIT,
        detail: format!(
            "evac {} graphs / {} instances, {} counterexamples; edc d=0 {} graphs, {} counterexamples; {:.1}s",
            evac.graphs_checked,
            evac.instances_checked,
            evac.counterexamples.len(),
            edc.graphs_checked,
            edc.counterexamples.len(),
            elapsed.as_secs_f64()
        ),
    }
}

/// Suites 1 and 2 rarely get stuck, so stuck states are also harvested from
/// proper colourings with `Δ + 1` classes and from `k` one below the
/// conjectured bound.
fn structural(reports: &[DiagnosticsReport], violations: usize) -> Verdict {
    let suite_states = reports.len();
    let suite_failures = reports.iter().filter(|r| !r.passed()).count();

    let harvested: Vec<(Vec<DiagnosticsReport>, bool)> = (0..2 * HARVEST_GRAPHS)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(SEED ^ 0x57c6, i));
            let n = rng.gen_range(5..=80);
            let cap = rng.gen_range(2..=8);
            let g = random_bounded_degree_graph(n, cap, rng.gen_range(0.6..1.0), rng.gen());
            let delta = g.max_degree();
            let (d, k) = if i < HARVEST_GRAPHS {
                (0, delta + 1)
            } else {
                let d = rng.gen_range(1..=3);
                (d, (delta + 1).div_ceil(d + 1).saturating_sub(1).max(1))
            };
            let cfg = SolveConfig::new(d, k)
                .with_diagnostics(true)
                .with_oracle_fallback(0);
            let run = solve(&g, &cfg).unwrap();
            let violated = matches!(run.outcome, SolveOutcome::TheoryViolation { .. });
            (run.diagnostics, violated)
        })
        .collect();
    let harvest_states: usize = harvested.iter().map(|h| h.0.len()).sum();
    let harvest_failures: usize = harvested
        .iter()
        .flat_map(|h| &h.0)
        .filter(|r| !r.passed())
        .count();
    let harvest_violations = harvested.iter().filter(|h| h.1).count();

    Verdict {
        pass: suite_failures == 0
            && violations == 0
            && harvest_failures == 0
            && harvest_violations == 0
            && harvest_states > 0,
        detail: format!(
            "suites 1-2: {suite_states} stuck states, {suite_failures} hard failures, {violations} theory violations; \
             harvest: {harvest_states} stuck states, {harvest_failures} hard failures, {harvest_violations} theory violations"
        ),
    }
}

/// Smallest `p` over all d-degeneracy orderings, and every prefix set
/// achieving it, as bitmasks.
fn brute_min_p(g: &Graph, d: usize) -> Option<(usize, Vec<u64>)> {
    let n = g.n();
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbours(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    let mut best: Option<(usize, Vec<u64>)> = None;
    fn go(
        adj: &[u64],
        d: usize,
        placed: u64,
        order: &mut Vec<usize>,
        p: usize,
        best: &mut Option<(usize, Vec<u64>)>,
    ) {
        let n = adj.len();
        if let Some((b, _)) = best {
            if p > *b {
                return;
            }
        }
        if order.len() == n {
            let prefix = order[..p].iter().fold(0u64, |m, &v| m | 1 << v);
            match best {
                Some((b, sets)) if *b == p => {
                    if !sets.contains(&prefix) {
                        sets.push(prefix);
                    }
                }
                _ => *best = Some((p, vec![prefix])),
            }
            return;
        }
        for v in 0..n {
            if placed >> v & 1 == 1 {
                continue;
            }
            let earlier = (adj[v] & placed).count_ones() as usize;
            if earlier > d {
                continue;
            }
            let next_p = if earlier == d { order.len() + 1 } else { p };
            order.push(v);
            go(adj, d, placed | 1 << v, order, next_p, best);
            order.pop();
        }
    }
    go(&adj, d, 0, &mut Vec::new(), 0, &mut best);
    best
}

fn degeneracy_module() -> Verdict {
    let graphs: Vec<Graph> = (1..=DEGENERACY_N)
        .flat_map(|n| (0u64..1 << (n * (n - 1) / 2)).map(move |code| labelled_graph(n, code)))
        .collect();
    let failures: Vec<String> = graphs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g)| {
            let mut out = Vec::new();
            for d in 0..=3 {
                let brute = brute_min_p(g, d);
                match (compute_vstar(g, d), brute) {
                    (Err(_), None) => {}
                    (Ok(vstar), Some((p, sets))) => {
                        let mask = vstar.iter().fold(0u64, |m, v| m | 1 << v);
                        if vstar.len() != p || sets != [mask] {
                            out.push(format!("graph {i} d={d}: |V*|={} brute p={p}", vstar.len()));
                        }
                    }
                    (got, brute) => out.push(format!(
                        "graph {i} d={d}: degeneracy disagrees ({} vs {})",
                        got.is_ok(),
                        brute.is_some()
                    )),
                }
            }
            out
        })
        .collect();

    let (fact_a, fact_b) = fact_trials();
    let pass = failures.is_empty() && fact_a == 0 && fact_b == 0;
    Verdict {
        pass,
        detail: format!(
            "{} labelled graphs x d in 0..=3, {} core mismatches; attach-into-core {fact_a}/{FACT_TRIALS} failures, light-attach {fact_b}/{FACT_TRIALS} failures{}",
            graphs.len(),
            failures.len(),
            failures.first().map(|f| format!("; first {f}")).unwrap_or_default()
        ),
    }
}

/// Random d-degenerate graph: each vertex picks at most `d` earlier neighbours.
fn random_degenerate(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        let want = rng.gen_range(0..=d.min(v));
        let picks = rand::seq::index::sample(rng, v, want);
        edges.extend(picks.into_iter().map(|u| (u, v)));
    }
    // relabel so the construction order is hidden
    let mut perm: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
    let edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
    Graph::new(n, &edges).unwrap()
}

fn with_vertex(g: &Graph, neighbours: &[usize]) -> Graph {
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.extend(neighbours.iter().map(|&u| (u, n)));
    Graph::new(n + 1, &edges).unwrap()
}

fn fact_trials() -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xfac7);
    let (mut fail_a, mut fail_b) = (0, 0);
    for _ in 0..FACT_TRIALS {
        let d = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=30);
        let g = random_degenerate(&mut rng, n, d);
        let vstar = compute_vstar(&g, d).unwrap().to_vec();
        let eq1 = vstar
            .iter()
            .all(|&v| g.degree_where(v, |w| vstar.binary_search(&w).is_ok()) >= d);
        let take = rng.gen_range(0..=d.min(vstar.len()));
        let picks: Vec<usize> = rand::seq::index::sample(&mut rng, vstar.len(), take)
            .into_iter()
            .map(|i| vstar[i])
            .collect();
        if !eq1 || !is_degenerate(&with_vertex(&g, &picks), d) {
            fail_a += 1;
        }

        let take = rng.gen_range(0..=(d - 1).min(n));
        let picks: Vec<usize> = rand::seq::index::sample(&mut rng, n, take).into_vec();
        let h = with_vertex(&g, &picks);
        let after = d_core(&h, d).to_vec();
        if after != vstar {
            fail_b += 1;
        }
    }
    (fail_a, fail_b)
}

fn determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_eqcol");
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.col");
    let run = |args: &[&str]| -> Vec<u8> {
        let out = Command::new(bin).args(args).output().expect("binary runs");
        out.stdout
    };
    let gen = run(&[
        "generate",
        "--n",
        "60",
        "--delta",
        "5",
        "--density",
        "0.6",
        "--seed",
        "7",
    ]);
    std::fs::write(&graph, &gen).unwrap();
    let g = graph.to_str().unwrap();
    let invocations: Vec<Vec<&str>> = vec![
        vec![
            "generate",
            "--n",
            "60",
            "--delta",
            "5",
            "--density",
            "0.6",
            "--seed",
            "7",
        ],
        vec!["solve", "--d", "1", "--seed", "3", g],
        vec!["solve", "--d", "2", "--k", "3", "--seed", "3", g],
        vec![
            "scan",
            "--conjecture",
            "edc",
            "--nmax",
            "7",
            "--mode",
            "sample:40",
            "--seed",
            "5",
            "--jobs",
            "4",
        ],
    ];
    let mut differing = Vec::new();
    for args in &invocations {
        let a = run(args);
        let b = run(args);
        if a != b || a.is_empty() {
            differing.push(args[0]);
        }
    }
    let small = dir.path().join("small.col");
    std::fs::write(
        &small,
        run(&["generate", "--n", "9", "--delta", "4", "--seed", "2"]),
    )
    .unwrap();
    let s = small.to_str().unwrap();
    let oracle_args = ["oracle", "--d", "1", "--k", "3", s];
    if run(&oracle_args) != run(&oracle_args) {
        differing.push("oracle");
    }
    Verdict {
        pass: differing.is_empty(),
        detail: if differing.is_empty() {
            "generate, solve, oracle and scan outputs byte-identical across runs".into()
        } else {
            format!("non-deterministic: {differing:?}")
        },
    }
}
