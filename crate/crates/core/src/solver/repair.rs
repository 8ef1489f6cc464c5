//! Near-equitable repair: path moves first, exchange moves when stuck.

use serde::{Deserialize, Serialize};

use crate::colouring::{classify, Colouring, ColouringClass};
use crate::diagnostics::check_structural_lemmas;
use crate::digraph::{
    build_with_cores, class_cores, partition_state, path_moves_into, MoveDigraph, PartitionState,
};
use crate::graph::Graph;

use super::moves::{exchange_in, rotate};
use super::tree::tree_swap_in;
use super::{
    changes_between, Change, Hypotheses, MoveKind, Session, SolveConfig, TraceEvent,
    ViolationReport,
};

/// Progress measure of a near-equitable colouring, compared lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Measure {
    /// Largest minus smallest class size.
    pub gap: usize,
    /// Number of inaccessible classes.
    pub b: usize,
    /// Total core size over the cut-off classes.
    pub cut_core: usize,
}

/// A colouring together with its cores, move digraph and partition state.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub in_core: Vec<bool>,
    pub dg: MoveDigraph,
    pub state: PartitionState,
    pub measure: Measure,
}

impl Snapshot {
    pub fn new(g: &Graph, c: &Colouring, d: usize) -> Self {
        let in_core = class_cores(g, c, d);
        let dg = build_with_cores(g, c, d, &in_core);
        let state = partition_state(&dg, c);
        let cut_core = (0..g.n())
            .filter(|&v| in_core[v] && state.in_tset(c.class_of(v)))
            .count();
        let measure = Measure {
            gap: c.max_size() - c.min_size(),
            b: state.b,
            cut_core,
        };
        Self {
            in_core,
            dg,
            state,
            measure,
        }
    }

    /// No largest class reaches a smallest one.
    pub fn is_stuck(&self, c: &Colouring) -> bool {
        let max = c.max_size();
        !(0..c.k()).any(|i| c.size(i) == max && self.state.accessible[i])
    }
}

pub fn measure_of(g: &Graph, c: &Colouring, d: usize) -> Measure {
    Snapshot::new(g, c, d).measure
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepairOutcome {
    Equitable(Colouring),
    /// No move applies; the last near-equitable colouring.
    Stuck(Colouring),
    OutOfRounds(Colouring),
    Violation(Box<ViolationReport>),
}

/// Repairs a near-equitable colouring of `g` within the configured round cap.
pub fn repair_near_equitable(g: &Graph, c: Colouring, cfg: &SolveConfig) -> RepairOutcome {
    let mut session = Session::new(cfg, 0);
    let mut rounds = cfg.round_cap(g.n());
    repair_in(g, c, &mut session, &mut rounds)
}

pub(crate) fn repair_in(
    g: &Graph,
    mut c: Colouring,
    session: &mut Session<'_>,
    rounds_left: &mut usize,
) -> RepairOutcome {
    let d = session.cfg.d;
    loop {
        if classify(&c) == ColouringClass::Equitable {
            return RepairOutcome::Equitable(c);
        }
        if *rounds_left == 0 {
            return RepairOutcome::OutOfRounds(c);
        }
        session.stats.repair_rounds += 1;
        let snap = Snapshot::new(g, &c, d);
        let k = c.k();
        let min = c.min_size();
        let is_min: Vec<bool> = (0..k).map(|i| c.size(i) == min).collect();
        let everything = vec![true; k];

        let largest: Vec<usize> = (0..k).filter(|&i| c.size(i) == c.max_size()).collect();
        if let Some(path) = snap.dg.shortest_path(&largest, &is_min, &everything) {
            c = commit_path(g, c, d, &path, &snap, MoveKind::PathMove, session);
            session.stats.path_moves += 1;
            *rounds_left -= 1;
            continue;
        }

        let heavy: Vec<usize> = (0..k)
            .filter(|&i| snap.state.accessible[i] && c.size(i) >= min + 2)
            .collect();
        if let Some(path) = snap.dg.shortest_path(&heavy, &is_min, &everything) {
            c = commit_path(g, c, d, &path, &snap, MoveKind::SizeTrim, session);
            session.stats.size_trims += 1;
            *rounds_left -= 1;
            continue;
        }

        session.stats.stuck_states += 1;
        let mut stuck_event = TraceEvent::bare(MoveKind::Stuck);
        stuck_event.measure_before = Some(snap.measure);
        session.record(stuck_event);

        let mut report = None;
        if session.cfg.diagnostics {
            let r = check_structural_lemmas(g, &c, d, &snap.state, session.cfg.tau);
            let violated = r.violations.clone();
            if session.depth == 0 {
                session.diagnostics.push(r.clone());
            }
            if !violated.is_empty() {
                return RepairOutcome::Violation(Box::new(ViolationReport {
                    reason: format!("structural checks failed: {violated:?}"),
                    hypotheses: Hypotheses::of(g, d, k),
                    colouring: c,
                    diagnostics: Some(r),
                }));
            }
            report = Some(r);
        }

        let rotation = rotate(g, &c, d, &snap);
        let sink = match rotation {
            super::Rotation::Applied { colouring, .. } => {
                let after = Snapshot::new(g, &colouring, d);
                if after.measure < snap.measure || classify(&colouring) == ColouringClass::Equitable
                {
                    commit(
                        &c,
                        &colouring,
                        &snap,
                        &after,
                        MoveKind::CycleRotation,
                        session,
                    );
                    session.stats.rotations += 1;
                    *rounds_left -= 1;
                    c = colouring;
                    continue;
                }
                None
            }
            super::Rotation::NotApplicable { sink } => sink,
        };

        match exchange_in(g, &c, &snap, session) {
            super::ExchangeOutcome::Applied { colouring, kind } => {
                let after = Snapshot::new(g, &colouring, d);
                commit(&c, &colouring, &snap, &after, kind, session);
                session.stats.exchanges += 1;
                *rounds_left -= 1;
                c = colouring;
                continue;
            }
            super::ExchangeOutcome::Violation(r) => return RepairOutcome::Violation(r),
            super::ExchangeOutcome::NotApplicable => {}
        }

        if d == 1 {
            if let Some(w) = sink {
                match tree_swap_in(g, &c, &snap, w, session) {
                    super::ExchangeOutcome::Applied { colouring, kind } => {
                        let after = Snapshot::new(g, &colouring, d);
                        commit(&c, &colouring, &snap, &after, kind, session);
                        session.stats.tree_swaps += 1;
                        *rounds_left -= 1;
                        c = colouring;
                        continue;
                    }
                    super::ExchangeOutcome::Violation(r) => return RepairOutcome::Violation(r),
                    super::ExchangeOutcome::NotApplicable => {}
                }
            }
        }

        let hyp = Hypotheses::of(g, d, k);
        let impossible = (hyp.degenerate_bound && sink.is_some() && !snap.state.tset.is_empty())
            || hyp.forest_bound;
        if impossible {
            return RepairOutcome::Violation(Box::new(ViolationReport {
                reason:
                    "stuck with no applicable move although an equitable colouring is guaranteed"
                        .into(),
                hypotheses: hyp,
                colouring: c,
                diagnostics: report,
            }));
        }
        return RepairOutcome::Stuck(c);
    }
}

fn commit_path(
    g: &Graph,
    c: Colouring,
    d: usize,
    path: &[usize],
    snap: &Snapshot,
    kind: MoveKind,
    session: &mut Session<'_>,
) -> Colouring {
    let mut next = c.clone();
    let mut hops = Vec::new();
    path_moves_into(g, &mut next, d, path, &snap.dg, &mut hops)
        .expect("representatives of a fresh digraph stay movable far-to-near");
    if session.cfg.diagnostics && session.depth == 0 {
        let after = Snapshot::new(g, &next, d);
        let mut event = TraceEvent::bare(kind);
        event.changes = hops
            .into_iter()
            .map(|(vertex, from, to)| Change { vertex, from, to })
            .collect();
        event.measure_before = Some(snap.measure);
        event.measure_after = Some(after.measure);
        session.record(event);
    }
    next
}

fn commit(
    before: &Colouring,
    after: &Colouring,
    snap: &Snapshot,
    after_snap: &Snapshot,
    kind: MoveKind,
    session: &mut Session<'_>,
) {
    let mut event = TraceEvent::bare(kind);
    event.changes = changes_between(before, after);
    event.measure_before = Some(snap.measure);
    event.measure_after = Some(after_snap.measure);
    session.record(event);
}
