//! Equitable colouring by edge insertion and near-equitable repair.
//!
//! [`solve`] starts from the edgeless graph, where any balanced partition is
//! equitable, and inserts the edges one by one. An insertion that breaks its
//! class is fixed by recolouring one endpoint ([`insert_edge`]), which leaves
//! a near-equitable colouring; [`repair_near_equitable`] then restores
//! equitability. When repair stalls the solver restarts with a shuffled edge
//! order and, for small graphs, finally settles the question with the
//! exhaustive oracle.

mod moves;
mod repair;
mod tree;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::colouring::{classify, is_valid, Colouring, ColouringClass};
use crate::degeneracy::subset_is_degenerate;
use crate::diagnostics::DiagnosticsReport;
use crate::digraph::degree_into_class;
use crate::error::{Error, Result};
use crate::generate::derive_seed;
use crate::graph::Graph;
use crate::oracle::{oracle_find, ORACLE_MAX_N};

pub use moves::{b_vertex_exchange, cycle_rotation, ExchangeOutcome, Rotation};
pub use repair::{measure_of, repair_near_equitable, Measure, RepairOutcome, Snapshot};
pub use tree::{build_tree_context, select_far_vertex, tree_swap, TreeRepairContext};

/// Recursion limit for the sub-colourings of inaccessible vertices.
const MAX_DEPTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub d: usize,
    pub k: usize,
    /// Committed repair moves allowed per attempt; `None` means `50 * k * n`.
    pub max_repair_rounds: Option<usize>,
    pub restart_budget: usize,
    pub rng_seed: u64,
    /// Graphs with at most this many vertices fall back to the oracle.
    pub oracle_fallback_n: usize,
    /// Record a move trace and structural diagnostics at stuck states.
    pub diagnostics: bool,
    /// Multiplier in the cut-set bound checked by the diagnostics.
    pub tau: usize,
}

impl SolveConfig {
    pub fn new(d: usize, k: usize) -> Self {
        Self {
            d,
            k,
            max_repair_rounds: None,
            restart_budget: 5,
            rng_seed: 0,
            oracle_fallback_n: 20,
            diagnostics: false,
            tau: 2,
        }
    }

    pub fn with_diagnostics(mut self, on: bool) -> Self {
        self.diagnostics = on;
        self
    }

    pub fn with_oracle_fallback(mut self, n: usize) -> Self {
        self.oracle_fallback_n = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn round_cap(&self, n: usize) -> usize {
        self.max_repair_rounds
            .unwrap_or_else(|| 50 * self.k * n.max(1))
    }
}

/// Which existence guarantees apply to an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub n: usize,
    pub max_degree: usize,
    pub d: usize,
    pub k: usize,
    /// `k (d + 1) > Δ`: a broken endpoint always has a class with at most
    /// `d` neighbours, and the last accessible block has two classes.
    pub recolouring: bool,
    /// `d >= 1` and `k >= Δ/d + 1`.
    pub degenerate_bound: bool,
    /// `d = 1`, `k >= (Δ + 2)/2` and `floor(n/k) >= 3 Δ^3`.
    pub forest_bound: bool,
}

impl Hypotheses {
    pub fn of(g: &Graph, d: usize, k: usize) -> Self {
        let n = g.n();
        let delta = g.max_degree();
        let recolouring = k * (d + 1) > delta;
        let degenerate_bound = d >= 1 && k * d >= delta + d;
        let forest_bound = d == 1 && k > 0 && 2 * k >= delta + 2 && n / k >= 3 * delta.pow(3);
        Self {
            n,
            max_degree: delta,
            d,
            k,
            recolouring,
            degenerate_bound,
            forest_bound,
        }
    }

    /// One of the hypotheses guarantees an equitable colouring.
    pub fn guaranteed(&self) -> bool {
        self.degenerate_bound || self.forest_bound || (self.d == 0 && self.k > self.max_degree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub reason: String,
    pub hypotheses: Hypotheses,
    pub colouring: Colouring,
    pub diagnostics: Option<DiagnosticsReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SolveOutcome {
    Solved {
        colouring: Colouring,
    },
    InfeasibleProven,
    /// Budgets ran out. `best` colours the first `edges_placed` edges of the
    /// last attempted order.
    GaveUp {
        best: Option<Colouring>,
        edges_placed: usize,
    },
    TheoryViolation {
        report: Box<ViolationReport>,
    },
}

impl SolveOutcome {
    pub fn colouring(&self) -> Option<&Colouring> {
        match self {
            SolveOutcome::Solved { colouring } => Some(colouring),
            _ => None,
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self, SolveOutcome::Solved { .. })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub attempts: usize,
    pub recolourings: usize,
    pub path_moves: usize,
    pub size_trims: usize,
    pub rotations: usize,
    pub exchanges: usize,
    pub tree_swaps: usize,
    pub repair_rounds: usize,
    pub stuck_states: usize,
    pub oracle_calls: usize,
    pub recursive_solves: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Attempt,
    Insert,
    Recolour,
    PathMove,
    SizeTrim,
    CycleRotation,
    BVertexExchange,
    ExchangeSwap,
    TreeSwap,
    Stuck,
    OracleFallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Change {
    pub vertex: usize,
    pub from: usize,
    pub to: usize,
}

/// One line of the move trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub kind: MoveKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub changes: Vec<Change>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure_before: Option<Measure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure_after: Option<Measure>,
}

impl TraceEvent {
    fn bare(kind: MoveKind) -> Self {
        Self {
            kind,
            edge: None,
            changes: Vec::new(),
            measure_before: None,
            measure_after: None,
        }
    }
}

/// Everything a solve produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveRun {
    pub outcome: SolveOutcome,
    pub stats: SolveStats,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub trace: Vec<TraceEvent>,
    /// Reports taken at every stuck state (diagnostics mode only).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub diagnostics: Vec<DiagnosticsReport>,
}

/// Mutable bookkeeping shared by one solve and its recursive sub-solves.
pub(crate) struct Session<'a> {
    pub cfg: &'a SolveConfig,
    pub depth: usize,
    pub stats: SolveStats,
    pub trace: Vec<TraceEvent>,
    pub diagnostics: Vec<DiagnosticsReport>,
}

impl<'a> Session<'a> {
    pub(crate) fn new(cfg: &'a SolveConfig, depth: usize) -> Self {
        Self {
            cfg,
            depth,
            stats: SolveStats::default(),
            trace: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    pub(crate) fn record(&mut self, event: TraceEvent) {
        if self.cfg.diagnostics && self.depth == 0 {
            self.trace.push(event);
        }
    }

    /// Solves a subgraph with `k` classes as a nested session.
    pub(crate) fn sub_solve(&mut self, g: &Graph, k: usize) -> Option<SolveOutcome> {
        if self.depth >= MAX_DEPTH {
            return None;
        }
        self.stats.recursive_solves += 1;
        let mut cfg = self.cfg.clone();
        cfg.k = k;
        let mut inner = Session::new(&cfg, self.depth + 1);
        let outcome = run_session(g, &mut inner);
        self.stats.oracle_calls += inner.stats.oracle_calls;
        self.stats.recursive_solves += inner.stats.recursive_solves;
        Some(outcome)
    }
}

pub fn solve(g: &Graph, cfg: &SolveConfig) -> Result<SolveRun> {
    if cfg.k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    let mut session = Session::new(cfg, 0);
    let outcome = run_session(g, &mut session);
    Ok(SolveRun {
        outcome,
        stats: session.stats,
        trace: session.trace,
        diagnostics: session.diagnostics,
    })
}

enum Attempt {
    Solved(Colouring),
    Failed {
        best: Colouring,
        edges_placed: usize,
    },
    Violation(Box<ViolationReport>),
}

fn run_session(g: &Graph, session: &mut Session<'_>) -> SolveOutcome {
    let cfg = session.cfg;
    let lexicographic: Vec<(usize, usize)> = g.edges().collect();
    let mut last_failure = None;
    for attempt in 0..=cfg.restart_budget {
        let mut order = lexicographic.clone();
        if attempt > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.rng_seed, attempt as u64));
            order.shuffle(&mut rng);
        }
        session.stats.attempts += 1;
        session.record(TraceEvent::bare(MoveKind::Attempt));
        match run_attempt(g, &order, session) {
            Attempt::Solved(c) => return SolveOutcome::Solved { colouring: c },
            Attempt::Violation(report) => return SolveOutcome::TheoryViolation { report },
            Attempt::Failed { best, edges_placed } => last_failure = Some((best, edges_placed)),
        }
    }

    if g.n() <= cfg.oracle_fallback_n.min(ORACLE_MAX_N) {
        session.stats.oracle_calls += 1;
        let verdict = oracle_find(g, cfg.d, cfg.k);
        let mut event = TraceEvent::bare(MoveKind::OracleFallback);
        if let Some(w) = &verdict.witness {
            event.changes = w
                .assignment()
                .iter()
                .enumerate()
                .map(|(vertex, &to)| Change {
                    vertex,
                    from: to,
                    to,
                })
                .collect();
        }
        session.record(event);
        return match verdict.witness {
            Some(colouring) => SolveOutcome::Solved { colouring },
            None => SolveOutcome::InfeasibleProven,
        };
    }
    let (best, edges_placed) = match last_failure {
        Some((best, placed)) => (Some(best), placed),
        None => (None, 0),
    };
    SolveOutcome::GaveUp { best, edges_placed }
}

/// Result of inserting one edge into an equitably coloured prefix graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion {
    /// The colouring is still valid.
    Unchanged,
    /// One endpoint moved to another class.
    Recoloured {
        colouring: Colouring,
        vertex: usize,
        from: usize,
        to: usize,
    },
    /// No endpoint can leave the broken class.
    NoTarget { class: usize },
}

/// Inserts `uv` (already present in `g`) and repairs the broken class by
/// recolouring one endpoint that has more than `d` neighbours in it.
///
/// The endpoint and target are chosen to maximise `d - d(v, target)`, ties
/// going to the lower class id and then the lower vertex. If no class takes
/// the endpoint with at most `d` neighbours, any class that keeps it
/// d-degenerate is accepted instead.
pub fn insert_edge(g: &Graph, c: &Colouring, (u, v): (usize, usize), d: usize) -> Insertion {
    let h = c.class_of(u);
    if c.class_of(v) != h || subset_is_degenerate(g, c.class(h), d) {
        return Insertion::Unchanged;
    }
    let mut best: Option<(usize, usize, usize)> = None; // (slack, class, vertex)
    for w in [u.min(v), u.max(v)] {
        if degree_into_class(g, c, w, h) < d + 1 {
            continue;
        }
        for target in (0..c.k()).filter(|&l| l != h) {
            let into = degree_into_class(g, c, w, target);
            if into > d {
                continue;
            }
            let key = (d - into, target, w);
            let better = match best {
                None => true,
                Some((slack, class, vertex)) => {
                    key.0 > slack || (key.0 == slack && (key.1, key.2) < (class, vertex))
                }
            };
            if better {
                best = Some(key);
            }
        }
    }
    if best.is_none() {
        'fallback: for w in [u.min(v), u.max(v)] {
            for target in (0..c.k()).filter(|&l| l != h) {
                if crate::digraph::joined_is_degenerate(g, c.class(target), w, d) {
                    best = Some((0, target, w));
                    break 'fallback;
                }
            }
        }
    }
    match best {
        Some((_, to, vertex)) => Insertion::Recoloured {
            colouring: c
                .apply_move(vertex, to)
                .expect("target differs from source"),
            vertex,
            from: h,
            to,
        },
        None => Insertion::NoTarget { class: h },
    }
}

fn run_attempt(full: &Graph, order: &[(usize, usize)], session: &mut Session<'_>) -> Attempt {
    let cfg = session.cfg;
    let n = full.n();
    let (d, k) = (cfg.d, cfg.k);
    let hyp_full = Hypotheses::of(full, d, k);
    let mut c = Colouring::round_robin(n, k);
    let mut rounds_left = cfg.round_cap(n);
    let mut prefix_edges = Vec::with_capacity(order.len());
    for (placed, &(u, v)) in order.iter().enumerate() {
        prefix_edges.push((u, v));
        let g = Graph::new(n, &prefix_edges).expect("edges of a simple graph");
        let mut event = TraceEvent::bare(MoveKind::Insert);
        event.edge = Some((u, v));
        session.record(event);
        match insert_edge(&g, &c, (u, v), d) {
            Insertion::Unchanged => continue,
            Insertion::NoTarget { class } => {
                if hyp_full.recolouring {
                    return Attempt::Violation(Box::new(ViolationReport {
                        reason: format!(
                            "no class accepts an endpoint of {u}-{v} leaving class {class}"
                        ),
                        hypotheses: hyp_full,
                        colouring: c,
                        diagnostics: None,
                    }));
                }
                return Attempt::Failed {
                    best: c,
                    edges_placed: placed,
                };
            }
            Insertion::Recoloured {
                colouring,
                vertex,
                from,
                to,
            } => {
                session.stats.recolourings += 1;
                let mut event = TraceEvent::bare(MoveKind::Recolour);
                event.changes.push(Change { vertex, from, to });
                session.record(event);
                c = colouring;
            }
        }
        match classify(&c) {
            ColouringClass::Equitable => continue,
            ColouringClass::NearEquitable => {}
            other => unreachable!("one recolouring of an equitable colouring gave {other:?}"),
        }
        match repair::repair_in(&g, c, session, &mut rounds_left) {
            RepairOutcome::Equitable(next) => c = next,
            RepairOutcome::Stuck(best) | RepairOutcome::OutOfRounds(best) => {
                return Attempt::Failed {
                    best,
                    edges_placed: placed + 1,
                }
            }
            RepairOutcome::Violation(report) => return Attempt::Violation(report),
        }
    }
    debug_assert!(is_valid(full, &c, d));
    debug_assert_eq!(classify(&c), ColouringClass::Equitable);
    Attempt::Solved(c)
}

/// Diff between two colourings of the same vertex set.
pub(crate) fn changes_between(before: &Colouring, after: &Colouring) -> Vec<Change> {
    before
        .assignment()
        .iter()
        .zip(after.assignment())
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(vertex, (&from, &to))| Change { vertex, from, to })
        .collect()
}
