use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eqcol::colouring::{classify, verify_colouring, Colouring, ColouringClass};
use eqcol::diagnostics::check_structural_lemmas;
use eqcol::digraph::{build_move_digraph, partition_state};
use eqcol::generate::{derive_seed, random_bounded_degree_graph};
use eqcol::oracle::oracle_find;
use eqcol::solver::{
    b_vertex_exchange, build_tree_context, cycle_rotation, measure_of, repair_near_equitable,
    ExchangeOutcome, MoveKind, RepairOutcome, Rotation, SolveRun, TraceEvent,
};
use eqcol::{solve, Graph, SolveConfig, SolveOutcome};

/// A stuck colouring of some prefix graph, recovered from a trace.
struct StuckState {
    graph: Graph,
    colouring: Colouring,
}

/// Replays `run.trace` on `g`, checking every committed move, and returns
/// the stuck states met on the way.
fn replay(g: &Graph, d: usize, k: usize, run: &SolveRun) -> Vec<StuckState> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut c = Colouring::round_robin(g.n(), k);
    let mut stuck = Vec::new();
    let prefix = |edges: &[(usize, usize)]| Graph::new(g.n(), edges).unwrap();
    for event in &run.trace {
        let TraceEvent {
            kind,
            edge,
            changes,
            measure_before,
            measure_after,
        } = event;
        match kind {
            MoveKind::Attempt => {
                edges.clear();
                c = Colouring::round_robin(g.n(), k);
            }
            MoveKind::Insert => edges.push(edge.expect("insert carries its edge")),
            MoveKind::Stuck => stuck.push(StuckState {
                graph: prefix(&edges),
                colouring: c.clone(),
            }),
            MoveKind::OracleFallback => {
                let assignment = changes.iter().map(|ch| ch.to).collect();
                c = Colouring::new(k, assignment).unwrap();
                edges = g.edges().collect();
            }
            _ => {
                for ch in changes {
                    assert_eq!(
                        c.class_of(ch.vertex),
                        ch.from,
                        "{kind:?} moves from the wrong class"
                    );
                }
                let moves: Vec<(usize, usize)> =
                    changes.iter().map(|ch| (ch.vertex, ch.to)).collect();
                c = c.reassign(&moves);
                let h = prefix(&edges);
                assert!(
                    verify_colouring(&h, &c, d).unwrap().valid,
                    "{kind:?} broke a class"
                );
                if *kind != MoveKind::Recolour {
                    assert!(matches!(
                        classify(&c),
                        ColouringClass::Equitable | ColouringClass::NearEquitable
                    ));
                    let (before, after) = (measure_before.unwrap(), measure_after.unwrap());
                    assert!(
                        after < before || classify(&c) == ColouringClass::Equitable,
                        "{kind:?} did not decrease the measure: {before:?} -> {after:?}"
                    );
                    assert_eq!(after, measure_of(&h, &c, d));
                }
            }
        }
    }
    if let SolveOutcome::Solved { colouring } = &run.outcome {
        assert_eq!(&c, colouring, "replay ends at the reported colouring");
        assert_eq!(edges.len(), g.m());
    }
    stuck
}

fn random_instance(seed: u64, n_range: std::ops::RangeInclusive<usize>) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(n_range);
    let cap = rng.gen_range(2..=8);
    random_bounded_degree_graph(n, cap, rng.gen_range(0.6..1.0), rng.gen())
}

/// Stuck states from proper colourings with `Δ + 1` classes.
fn harvest(limit: usize) -> Vec<(StuckState, usize)> {
    let mut out = Vec::new();
    for i in 0..4000u64 {
        let g = random_instance(derive_seed(0x57c6, i), 5..=80);
        let k = g.max_degree() + 1;
        let cfg = SolveConfig::new(0, k)
            .with_diagnostics(true)
            .with_oracle_fallback(0);
        let run = solve(&g, &cfg).unwrap();
        out.extend(replay(&g, 0, k, &run).into_iter().map(|s| (s, 0)));
        if out.len() >= limit {
            break;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solved_witnesses_verify(seed in any::<u64>(), d in 1usize..4) {
        let g = random_instance(seed, 1..=40);
        let k = g.max_degree().div_ceil(d) + 1;
        let run = solve(&g, &SolveConfig::new(d, k).with_diagnostics(true)).unwrap();
        let SolveOutcome::Solved { colouring } = &run.outcome else {
            panic!("unsolved: {:?}", run.outcome);
        };
        prop_assert!(verify_colouring(&g, colouring, d).unwrap().valid);
        prop_assert_eq!(classify(colouring), ColouringClass::Equitable);
        replay(&g, d, k, &run);
    }

    #[test]
    fn small_verdicts_match_oracle(seed in any::<u64>(), d in 0usize..3, k in 1usize..5) {
        let g = random_instance(seed, 1..=8);
        let run = solve(&g, &SolveConfig::new(d, k).with_oracle_fallback(8)).unwrap();
        prop_assert_eq!(run.outcome.is_solved(), oracle_find(&g, d, k).feasible);
    }
}

#[test]
fn traces_replay_below_the_bound() {
    for i in 0..300u64 {
        let g = random_instance(derive_seed(11, i), 5..=40);
        let d = 1 + (i as usize % 3);
        let k = (g.max_degree() + 1)
            .div_ceil(d + 1)
            .saturating_sub(1)
            .max(1);
        let cfg = SolveConfig::new(d, k)
            .with_diagnostics(true)
            .with_oracle_fallback(12);
        let run = solve(&g, &cfg).unwrap();
        assert!(!matches!(run.outcome, SolveOutcome::TheoryViolation { .. }));
        replay(&g, d, k, &run);
    }
}

#[test]
fn same_seed_same_run() {
    let g = random_instance(5, 60..=60);
    let cfg = SolveConfig::new(1, 3).with_diagnostics(true).with_seed(9);
    assert_eq!(solve(&g, &cfg).unwrap(), solve(&g, &cfg).unwrap());
}

#[test]
fn stuck_states_satisfy_hard_checks() {
    let states = harvest(8);
    assert!(!states.is_empty(), "no stuck states harvested");
    for (s, d) in &states {
        let dg = build_move_digraph(&s.graph, &s.colouring, *d);
        let state = partition_state(&dg, &s.colouring);
        let report = check_structural_lemmas(&s.graph, &s.colouring, *d, &state, 2);
        assert!(report.stuck);
        assert!(report.passed(), "{:?}", report.violations);
    }
}

#[test]
fn stuck_state_moves_are_sound() {
    let states = harvest(8);
    for (s, d) in &states {
        let (g, c) = (&s.graph, &s.colouring);
        let before = measure_of(g, c, *d);
        let dg = build_move_digraph(g, c, *d);
        let state = partition_state(&dg, c);
        if let Rotation::Applied { colouring, moved } = cycle_rotation(g, c, *d, &state) {
            assert!(!moved.is_empty());
            assert_eq!(colouring.sizes(), c.sizes());
        }
        let cfg = SolveConfig::new(*d, c.k());
        if let ExchangeOutcome::Applied { colouring, .. } = b_vertex_exchange(g, c, &cfg) {
            assert!(verify_colouring(g, &colouring, *d).unwrap().valid);
            assert!(
                classify(&colouring) == ColouringClass::Equitable
                    || measure_of(g, &colouring, *d) < before
            );
        }
        match repair_near_equitable(g, c.clone(), &cfg) {
            RepairOutcome::Equitable(done) => {
                assert!(verify_colouring(g, &done, *d).unwrap().valid);
                assert_eq!(classify(&done), ColouringClass::Equitable);
            }
            RepairOutcome::Violation(r) => panic!("violation: {}", r.reason),
            _ => {}
        }
    }
}

#[test]
fn tree_context_partitions_the_sink_core() {
    // cut-off classes only show up a little below the bound
    let mut checked = 0;
    for (i, off) in (0..400u64).flat_map(|i| (1..=3).map(move |off| (i, off))) {
        let g = random_instance(derive_seed(23, i), 10..=60);
        let k = (g.max_degree() + 1).div_ceil(2).saturating_sub(off).max(1);
        let cfg = SolveConfig::new(1, k)
            .with_diagnostics(true)
            .with_oracle_fallback(0);
        let run = solve(&g, &cfg).unwrap();
        for s in replay(&g, 1, k, &run) {
            let dg = build_move_digraph(&s.graph, &s.colouring, 1);
            let state = partition_state(&dg, &s.colouring);
            for &w in &state.tset {
                let ctx = build_tree_context(&s.graph, &s.colouring, w).unwrap();
                let mut all: Vec<usize> = ctx
                    .w1
                    .iter()
                    .chain(&ctx.w2)
                    .chain(&ctx.w_gt2)
                    .copied()
                    .collect();
                all.sort_unstable();
                assert_eq!(all, ctx.w_core);
                assert_eq!(
                    ctx.b1.len() + ctx.b2.len(),
                    s.colouring.n()
                        - state
                            .accessible_classes()
                            .iter()
                            .map(|&i| s.colouring.size(i))
                            .sum::<usize>()
                );
                assert_eq!(ctx.b21.len() + ctx.b22.len(), ctx.b2.len());
                assert_eq!(ctx.r, ctx.rset.len());
                checked += 1;
            }
        }
    }
    assert!(checked > 0, "no cut-off classes met");
}
