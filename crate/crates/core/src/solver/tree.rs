//! The forest-case swap: two vertices leave a sink class `W` and are
//! replaced by an inaccessible vertex `x` and a far-away vertex `u`.

use serde::{Deserialize, Serialize};

use crate::colouring::Colouring;
use crate::degeneracy::subset_is_degenerate;
use crate::digraph::{degree_into_core, path_moves_into};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::moves::{improves, BRecolourings, ExchangeOutcome, Graft};
use super::repair::Snapshot;
use super::{MoveKind, Session, SolveConfig};

/// Candidate swaps checked before giving up.
const SWAP_BUDGET: usize = 256;

/// Vertex groups around a sink class `w` of the cut-off classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeRepairContext {
    pub w: usize,
    pub w_core: Vec<usize>,
    /// Core vertices of `w` with at least two neighbours in every other
    /// accessible core.
    pub w1: Vec<usize>,
    /// Remaining core vertices with exactly one nearby class in `rprime`.
    pub w2: Vec<usize>,
    pub w_gt2: Vec<usize>,
    /// Cut-off classes sending few edges into the core of `w`.
    pub rset: Vec<usize>,
    /// `rset` plus the cut class.
    pub rprime: Vec<usize>,
    pub r: usize,
    /// Inaccessible vertices with a neighbour in `w1`.
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
    /// Vertices of `b2` with exactly one neighbour in the core of `w`.
    pub b21: Vec<usize>,
    pub b22: Vec<usize>,
}

/// Builds the context for sink class `w` of a stuck forest colouring.
pub fn build_tree_context(g: &Graph, c: &Colouring, w: usize) -> Result<TreeRepairContext> {
    let snap = Snapshot::new(g, c, 1);
    context(g, c, &snap, w)
}

fn context(g: &Graph, c: &Colouring, snap: &Snapshot, w: usize) -> Result<TreeRepairContext> {
    let state = &snap.state;
    if !state.in_tset(w) {
        return Err(Error::InvalidConfig(format!(
            "class {w} is not among the cut-off classes"
        )));
    }
    let delta = g.max_degree();
    let in_core = &snap.in_core;
    let w_core: Vec<usize> = c.class(w).iter().copied().filter(|&v| in_core[v]).collect();

    let rset: Vec<usize> = state
        .tset
        .iter()
        .copied()
        .filter(|&v| v != w)
        .filter(|&v| {
            let into_w = c
                .class(v)
                .iter()
                .map(|&x| g.degree_where(x, |y| in_core[y] && c.class_of(y) == w))
                .sum::<usize>();
            (into_w as i64) < 2 * (c.size(v) as i64 - (delta * delta) as i64)
        })
        .collect();
    let mut rprime = rset.clone();
    if let Some(u) = state.u_minus {
        if u != w && !rprime.contains(&u) {
            rprime.push(u);
            rprime.sort_unstable();
        }
    }

    let others: Vec<usize> = state
        .accessible_classes()
        .into_iter()
        .filter(|&v| v != w)
        .collect();
    let (mut w1, mut w2, mut w_gt2) = (Vec::new(), Vec::new(), Vec::new());
    for &x in &w_core {
        if others
            .iter()
            .all(|&v| degree_into_core(g, c, in_core, x, v) >= 2)
        {
            w1.push(x);
            continue;
        }
        let near = rprime
            .iter()
            .filter(|&&v| degree_into_core(g, c, in_core, x, v) <= 1)
            .count();
        if near == 1 {
            w2.push(x);
        } else {
            w_gt2.push(x);
        }
    }

    let b_members: Vec<usize> = state
        .inaccessible_classes()
        .iter()
        .flat_map(|&i| c.class(i).iter().copied())
        .collect();
    let mut b_members = b_members;
    b_members.sort_unstable();
    let (mut b1, mut b2, mut b21, mut b22) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for &x in &b_members {
        if g.neighbours(x).iter().any(|y| w1.binary_search(y).is_ok()) {
            b1.push(x);
            continue;
        }
        b2.push(x);
        let into = g.degree_where(x, |y| w_core.binary_search(&y).is_ok());
        if into == 1 {
            b21.push(x);
        } else {
            b22.push(x);
        }
    }

    Ok(TreeRepairContext {
        w,
        w_core,
        w1,
        w2,
        w_gt2,
        r: rset.len(),
        rset,
        rprime,
        b1,
        b2,
        b21,
        b22,
    })
}

/// Least vertex of `class` with at most one neighbour in `w_core` and no
/// path of length at most two to `x`.
pub fn select_far_vertex(g: &Graph, class: &[usize], w_core: &[usize], x: usize) -> Option<usize> {
    class.iter().copied().find(|&u| {
        u != x
            && !g.has_edge(u, x)
            && !g.neighbours(u).iter().any(|&y| g.has_edge(y, x))
            && g.degree_where(u, |y| w_core.binary_search(&y).is_ok()) <= 1
    })
}

/// Searches for a swap on the stuck forest colouring `c` around sink `w`.
pub fn tree_swap(g: &Graph, c: &Colouring, w: usize, cfg: &SolveConfig) -> ExchangeOutcome {
    let snap = Snapshot::new(g, c, 1);
    let mut session = Session::new(cfg, 0);
    tree_swap_in(g, c, &snap, w, &mut session)
}

pub(crate) fn tree_swap_in(
    g: &Graph,
    c: &Colouring,
    snap: &Snapshot,
    w: usize,
    session: &mut Session<'_>,
) -> ExchangeOutcome {
    let d = 1;
    let Ok(ctx) = context(g, c, snap, w) else {
        return ExchangeOutcome::NotApplicable;
    };
    let state = &snap.state;
    let Some(c_minus) = state.c_minus else {
        return ExchangeOutcome::NotApplicable;
    };
    let in_core = &snap.in_core;
    let k = c.k();
    let is_min: Vec<bool> = (0..k).map(|i| i == c_minus).collect();
    let mut without_w = vec![true; k];
    without_w[w] = false;
    let mut b = BRecolourings::new(g, c, state);
    let mut budget = SWAP_BUDGET;

    let landing: Vec<usize> = state
        .tset
        .iter()
        .copied()
        .chain(state.u_minus)
        .filter(|&v| v != w)
        .collect();
    let near = |v: usize, class: usize| degree_into_core(g, c, in_core, v, class) <= 1;
    let movers: Vec<usize> = ctx.w2.iter().chain(&ctx.w_gt2).copied().collect();

    for &x in &ctx.b22 {
        for &w2 in g.neighbours(x) {
            if ctx.w_gt2.binary_search(&w2).is_err() {
                continue;
            }
            for &w1 in g.neighbours(x) {
                if w1 == w2 || !movers.contains(&w1) {
                    continue;
                }
                for &v1 in landing.iter().filter(|&&v| near(w1, v)) {
                    let Some(path) = snap.dg.shortest_path(&[v1], &is_min, &without_w) else {
                        continue;
                    };
                    for &u2 in ctx.rprime.iter().filter(|&&u| u != w && near(w2, u)) {
                        // the class losing u: off the path, or earlier on it
                        let donors: Vec<usize> = match path.iter().position(|&p| p == u2) {
                            None => vec![u2],
                            Some(pos) => path[..pos].to_vec(),
                        };
                        for donor in donors {
                            if budget == 0 {
                                return ExchangeOutcome::NotApplicable;
                            }
                            let Some(u) = select_far_vertex(g, c.class(donor), &ctx.w_core, x)
                            else {
                                continue;
                            };
                            budget -= 1;
                            let next =
                                match assemble(g, c, snap, &path, donor, u2, (x, u, w1, w2, v1), w)
                                {
                                    Some(next) => next,
                                    None => continue,
                                };
                            let graft = match b.without(x, session) {
                                Graft::Ready(r) => r,
                                Graft::Unavailable => continue,
                                Graft::Violation(r) => return ExchangeOutcome::Violation(r),
                            };
                            let next = next.reassign(&graft);
                            if improves(g, &next, d, snap) {
                                return ExchangeOutcome::Applied {
                                    colouring: next,
                                    kind: MoveKind::TreeSwap,
                                };
                            }
                        }
                    }
                }
            }
        }
    }
    ExchangeOutcome::NotApplicable
}

/// Applies the accessible half of a swap: path moves split at `donor` or `u2`,
/// then `w1 -> v1`, `w2 -> u2`, and `x`, `u` into `w`.
#[allow(clippy::too_many_arguments)]
fn assemble(
    g: &Graph,
    c: &Colouring,
    snap: &Snapshot,
    path: &[usize],
    donor: usize,
    u2: usize,
    (x, u, w1, w2, v1): (usize, usize, usize, usize, usize),
    w: usize,
) -> Option<Colouring> {
    let mut next = c.clone();
    let mut hops = Vec::new();
    match path.iter().position(|&p| p == u2) {
        None => {
            path_moves_into(g, &mut next, 1, path, &snap.dg, &mut hops).ok()?;
        }
        Some(j) => {
            let i = path.iter().position(|&p| p == donor)?;
            path_moves_into(g, &mut next, 1, &path[j..], &snap.dg, &mut hops).ok()?;
            path_moves_into(g, &mut next, 1, &path[..=i], &snap.dg, &mut hops).ok()?;
        }
    }
    if [x, u, w1, w2]
        .iter()
        .any(|&v| next.class_of(v) != c.class_of(v))
    {
        return None;
    }
    let next = next.reassign(&[(w1, v1), (w2, u2), (x, w), (u, w)]);
    subset_is_degenerate(g, next.class(w), 1).then_some(next)
}
