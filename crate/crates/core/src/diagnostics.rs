//! Structural checks on a near-equitable colouring and its partition state.
//!
//! Each check carries a severity. Hard checks hold for every stuck state the
//! solver can reach, provided the listed degree hypotheses hold; a failure
//! means the implementation or the underlying theory is wrong. Advisory
//! checks describe properties of extremal states and are reported without
//! being enforced. Checks whose hypotheses fail are marked skipped.

use serde::{Deserialize, Serialize};

use crate::colouring::{classify, Colouring, ColouringClass};
use crate::digraph::{
    build_with_cores, class_cores, degree_into_class, degree_into_core, movable_with_cores,
    partition_state, MoveDigraph, PartitionState,
};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    StateConsistency,
    CoreMinDegree,
    InaccessibleCoreDegree,
    LastComponentCoreDegree,
    LastComponentSize,
    AccessibleSizeAndCore,
    InaccessibleVolume,
    CutSetNotMovable,
    CutSetPaths,
    SinkCoreDegree,
    ExchangeBlocked,
    ExchangeClique,
    CutSetBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Hard,
    Advisory,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub id: CheckId,
    pub severity: Severity,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    /// Near-equitable with no largest class reaching a smallest one.
    pub stuck: bool,
    pub checks: Vec<LemmaCheck>,
    /// Hard checks that failed.
    pub violations: Vec<CheckId>,
}

impl DiagnosticsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&self, id: CheckId) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}

struct Ctx<'a> {
    g: &'a Graph,
    c: &'a Colouring,
    d: usize,
    state: &'a PartitionState,
    in_core: Vec<bool>,
    dg: MoveDigraph,
    checks: Vec<LemmaCheck>,
}

impl Ctx<'_> {
    fn push(&mut self, id: CheckId, severity: Severity, failure: Option<String>) {
        self.checks.push(LemmaCheck {
            id,
            severity,
            passed: failure.is_none(),
            detail: failure.unwrap_or_default(),
        });
    }

    fn skip(&mut self, id: CheckId, why: &str) {
        self.checks.push(LemmaCheck {
            id,
            severity: Severity::Skipped,
            passed: true,
            detail: why.to_string(),
        });
    }

    fn core_degree(&self, v: usize, class: usize) -> usize {
        degree_into_core(self.g, self.c, &self.in_core, v, class)
    }

    fn b_vertices(&self) -> Vec<usize> {
        (0..self.g.n())
            .filter(|&v| !self.state.accessible[self.c.class_of(v)])
            .collect()
    }
}

/// Runs every check on colouring `c` of `g` with the given partition state.
///
/// `tau` is the multiplier in the cut-set bound; it is only enforced when
/// `1 <= tau <= d + 1` and `k tau (d + 2) >= (1 + tau)(Δ + 1)`.
pub fn check_structural_lemmas(
    g: &Graph,
    c: &Colouring,
    d: usize,
    state: &PartitionState,
    tau: usize,
) -> DiagnosticsReport {
    let in_core = class_cores(g, c, d);
    let dg = build_with_cores(g, c, d, &in_core);
    let mut ctx = Ctx {
        g,
        c,
        d,
        state,
        in_core,
        dg,
        checks: Vec::new(),
    };
    let k = c.k();
    let delta = g.max_degree();
    let near = classify(c) == ColouringClass::NearEquitable;
    let max = c.max_size();
    let stuck = near
        && state.accessible.len() == k
        && !(0..k).any(|i| c.size(i) == max && state.accessible[i]);

    state_consistency(&mut ctx);
    core_min_degree(&mut ctx);
    if !stuck {
        for id in [
            CheckId::InaccessibleCoreDegree,
            CheckId::LastComponentCoreDegree,
            CheckId::LastComponentSize,
            CheckId::AccessibleSizeAndCore,
            CheckId::InaccessibleVolume,
            CheckId::CutSetNotMovable,
            CheckId::CutSetPaths,
            CheckId::SinkCoreDegree,
            CheckId::ExchangeBlocked,
            CheckId::ExchangeClique,
            CheckId::CutSetBound,
        ] {
            ctx.skip(id, "not a stuck near-equitable colouring");
        }
        return finish(stuck, ctx.checks);
    }

    inaccessible_core_degree(&mut ctx);
    last_component_core_degree(&mut ctx);
    let base = k * (d + 1) > delta;
    if base {
        last_component_size(&mut ctx);
        accessible_size_and_core(&mut ctx);
        inaccessible_volume(&mut ctx);
    } else {
        for id in [
            CheckId::LastComponentSize,
            CheckId::AccessibleSizeAndCore,
            CheckId::InaccessibleVolume,
        ] {
            ctx.skip(id, "needs k(d+1) > max degree");
        }
    }
    cut_set_not_movable(&mut ctx);
    cut_set_paths(&mut ctx);
    sink_core_degree(&mut ctx);
    exchange_blocked(&mut ctx);
    exchange_clique(&mut ctx);

    let bound_applies =
        base && tau >= 1 && tau <= d + 1 && k * tau * (d + 2) >= (1 + tau) * (delta + 1);
    if bound_applies {
        let (t, b) = (state.t(), state.b);
        let failure = (t >= tau * b).then(|| format!("t = {t}, tau b = {}", tau * b));
        ctx.push(CheckId::CutSetBound, Severity::Hard, failure);
    } else {
        ctx.skip(CheckId::CutSetBound, "degree hypothesis for tau not met");
    }
    finish(stuck, ctx.checks)
}

fn finish(stuck: bool, checks: Vec<LemmaCheck>) -> DiagnosticsReport {
    let violations = checks
        .iter()
        .filter(|c| c.severity == Severity::Hard && !c.passed)
        .map(|c| c.id)
        .collect();
    DiagnosticsReport {
        stuck,
        checks,
        violations,
    }
}

fn state_consistency(ctx: &mut Ctx<'_>) {
    let c = ctx.c;
    let k = c.k();
    let state = ctx.state;
    let failure = if state.accessible.len() != k {
        Some(format!(
            "state covers {} classes, colouring has {k}",
            state.accessible.len()
        ))
    } else {
        let fresh = partition_state(&ctx.dg, c);
        if fresh.accessible != state.accessible {
            let missing: Vec<usize> = (0..k)
                .filter(|&i| fresh.accessible[i] != state.accessible[i])
                .collect();
            Some(format!("accessibility disagrees on classes {missing:?}"))
        } else if fresh.components != state.components
            || fresh.u_minus != state.u_minus
            || fresh.tset != state.tset
        {
            Some("component structure disagrees with the move digraph".into())
        } else {
            None
        }
    };
    ctx.push(CheckId::StateConsistency, Severity::Hard, failure);
}

fn core_min_degree(ctx: &mut Ctx<'_>) {
    let failure = (0..ctx.g.n())
        .filter(|&v| ctx.in_core[v])
        .find(|&v| ctx.core_degree(v, ctx.c.class_of(v)) < ctx.d)
        .map(|v| format!("core vertex {v} has fewer than d core neighbours in its class"));
    ctx.push(CheckId::CoreMinDegree, Severity::Hard, failure);
}

fn inaccessible_core_degree(ctx: &mut Ctx<'_>) {
    let accessible = ctx.state.accessible_classes();
    let mut failure = None;
    'outer: for x in ctx.b_vertices() {
        for &v in &accessible {
            if ctx.core_degree(x, v) < ctx.d + 1 {
                failure = Some(format!(
                    "vertex {x} has at most d neighbours in core of {v}"
                ));
                break 'outer;
            }
        }
    }
    ctx.push(CheckId::InaccessibleCoreDegree, Severity::Hard, failure);
}

fn last_component_core_degree(ctx: &mut Ctx<'_>) {
    let state = ctx.state;
    let outside: Vec<usize> = state
        .accessible_classes()
        .into_iter()
        .filter(|i| !state.d_minus.contains(i))
        .collect();
    let mut failure = None;
    'outer: for &dc in &state.d_minus {
        for &v in ctx.c.class(dc) {
            for &u in &outside {
                if ctx.core_degree(v, u) < ctx.d + 1 {
                    failure = Some(format!("vertex {v} of class {dc} is light towards {u}"));
                    break 'outer;
                }
            }
        }
    }
    ctx.push(CheckId::LastComponentCoreDegree, Severity::Hard, failure);
}

fn last_component_size(ctx: &mut Ctx<'_>) {
    let len = ctx.state.d_minus.len();
    let failure = (len < 2).then(|| format!("last component has {len} classes"));
    ctx.push(CheckId::LastComponentSize, Severity::Hard, failure);
}

fn accessible_size_and_core(ctx: &mut Ctx<'_>) {
    let min = ctx.state.min_size;
    let mut failure = None;
    for v in ctx.state.accessible_classes() {
        if ctx.c.size(v) > min + 1 {
            failure = Some(format!("accessible class {v} has size {}", ctx.c.size(v)));
            break;
        }
        if !ctx.c.class(v).iter().any(|&x| ctx.in_core[x]) {
            failure = Some(format!("accessible class {v} has an empty core"));
            break;
        }
    }
    ctx.push(CheckId::AccessibleSizeAndCore, Severity::Hard, failure);
}

fn inaccessible_volume(ctx: &mut Ctx<'_>) {
    let volume = ctx.b_vertices().len();
    let b = ctx.state.b;
    let failure = ctx
        .state
        .accessible_classes()
        .into_iter()
        .find(|&v| volume < b * ctx.c.size(v) + 1)
        .map(|v| {
            format!(
                "|B| = {volume} but b |V| + 1 = {} for class {v}",
                b * ctx.c.size(v) + 1
            )
        });
    ctx.push(CheckId::InaccessibleVolume, Severity::Hard, failure);
}

fn cut_set_not_movable(ctx: &mut Ctx<'_>) {
    let state = ctx.state;
    let Some(um) = state.u_minus else {
        ctx.skip(CheckId::CutSetNotMovable, "no cut class");
        return;
    };
    let beyond: Vec<usize> = state
        .d_minus
        .iter()
        .copied()
        .filter(|&i| i != um && !state.in_tset(i))
        .collect();
    let mut failure = None;
    'outer: for &v in &state.tset {
        for &x in ctx.c.class(v) {
            for &u in &beyond {
                if movable_with_cores(ctx.g, ctx.c, ctx.d, &ctx.in_core, x, u) {
                    failure = Some(format!("vertex {x} of cut-off class {v} moves to {u}"));
                    break 'outer;
                }
            }
        }
    }
    ctx.push(CheckId::CutSetNotMovable, Severity::Advisory, failure);
}

fn cut_set_paths(ctx: &mut Ctx<'_>) {
    let state = ctx.state;
    let (Some(cm), Some(um)) = (state.c_minus, state.u_minus) else {
        ctx.skip(CheckId::CutSetPaths, "no cut class");
        return;
    };
    let k = ctx.c.k();
    let mut allowed = vec![false; k];
    for &i in &state.d_minus {
        allowed[i] = true;
    }
    let to_cut = ctx.dg.reaching(&[um], &allowed);
    let mut without_t = allowed.clone();
    for &i in &state.tset {
        without_t[i] = false;
    }
    let from_cut = um == cm || {
        let reach = ctx.dg.reaching(&[cm], &without_t);
        reach[um]
    };
    let failure = if !from_cut {
        Some(format!(
            "class {um} reaches {cm} only through cut-off classes"
        ))
    } else {
        state
            .tset
            .iter()
            .find(|&&v| !to_cut[v])
            .map(|v| format!("cut-off class {v} does not reach {um}"))
    };
    ctx.push(CheckId::CutSetPaths, Severity::Advisory, failure);
}

fn sink_core_degree(ctx: &mut Ctx<'_>) {
    let state = ctx.state;
    if state.tset.is_empty() {
        ctx.skip(CheckId::SinkCoreDegree, "no cut-off classes");
        return;
    }
    let d = ctx.d;
    let has_out = |from: usize| {
        state.tset.iter().any(|&to| {
            to != from
                && ctx
                    .c
                    .class(from)
                    .iter()
                    .any(|&v| ctx.in_core[v] && degree_into_class(ctx.g, ctx.c, v, to) < d)
        })
    };
    let Some(w) = state.tset.iter().copied().find(|&w| !has_out(w)) else {
        ctx.skip(CheckId::SinkCoreDegree, "cut-off classes carry a cycle");
        return;
    };
    let mut failure = None;
    'outer: for &x in ctx.c.class(w) {
        if !ctx.in_core[x] {
            continue;
        }
        for &v in &state.tset {
            if degree_into_class(ctx.g, ctx.c, x, v) < d {
                failure = Some(format!("core vertex {x} of sink {w} is light towards {v}"));
                break 'outer;
            }
        }
    }
    ctx.push(CheckId::SinkCoreDegree, Severity::Advisory, failure);
}

/// Tight inaccessible neighbours of core vertices in cut-off classes.
fn tight_pairs(ctx: &Ctx<'_>) -> Vec<(usize, usize, Vec<usize>)> {
    let mut out = Vec::new();
    for &v in &ctx.state.tset {
        for &x in ctx.c.class(v) {
            if !ctx.in_core[x] {
                continue;
            }
            let tight: Vec<usize> = ctx
                .g
                .neighbours(x)
                .iter()
                .copied()
                .filter(|&y| !ctx.state.accessible[ctx.c.class_of(y)])
                .filter(|&y| degree_into_class(ctx.g, ctx.c, y, v) == ctx.d + 1)
                .collect();
            if !tight.is_empty() {
                out.push((v, x, tight));
            }
        }
    }
    out
}

fn exchange_blocked(ctx: &mut Ctx<'_>) {
    if ctx.state.tset.is_empty() {
        ctx.skip(CheckId::ExchangeBlocked, "no cut-off classes");
        return;
    }
    let accessible = ctx.state.accessible_classes();
    let failure = tight_pairs(ctx).into_iter().find_map(|(v, x, _)| {
        accessible
            .iter()
            .copied()
            .find(|&u| u != v && movable_with_cores(ctx.g, ctx.c, ctx.d, &ctx.in_core, x, u))
            .map(|u| format!("core vertex {x} of {v} has a tight neighbour and moves to {u}"))
    });
    ctx.push(CheckId::ExchangeBlocked, Severity::Advisory, failure);
}

fn exchange_clique(ctx: &mut Ctx<'_>) {
    if ctx.state.tset.is_empty() {
        ctx.skip(CheckId::ExchangeClique, "no cut-off classes");
        return;
    }
    let failure = tight_pairs(ctx).into_iter().find_map(|(v, x, tight)| {
        for (i, &a) in tight.iter().enumerate() {
            for &b in &tight[i + 1..] {
                if !ctx.g.has_edge(a, b) {
                    return Some(format!(
                        "tight neighbours {a} and {b} of vertex {x} in {v} are not adjacent"
                    ));
                }
            }
        }
        None
    });
    ctx.push(CheckId::ExchangeClique, Severity::Advisory, failure);
}
