//! Moves for stuck states: rotating core vertices around a cycle of cut-off
//! classes, and exchanging an inaccessible vertex into the accessible part.

use std::collections::HashMap;

use crate::colouring::{classify, is_valid, Colouring, ColouringClass};
use crate::digraph::{degree_into_class, movable_with_cores, path_moves_into, PartitionState};
use crate::graph::Graph;

use super::repair::Snapshot;
use super::{MoveKind, Session, SolveConfig, SolveOutcome, ViolationReport};

/// Candidate checks allowed per exchange search.
const EXCHANGE_BUDGET: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rotation {
    /// Each listed vertex moved simultaneously to the next class of a cycle.
    Applied {
        colouring: Colouring,
        moved: Vec<(usize, usize, usize)>,
    },
    /// The cut-off classes carry no cycle; `sink` is the least class with no
    /// outgoing arc among them.
    NotApplicable { sink: Option<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExchangeOutcome {
    Applied {
        colouring: Colouring,
        kind: MoveKind,
    },
    NotApplicable,
    Violation(Box<ViolationReport>),
}

/// Rotates along a cycle of the digraph on cut-off classes where `V -> U`
/// when some core vertex of `V` has fewer than `d` neighbours in `U`.
pub fn cycle_rotation(g: &Graph, c: &Colouring, d: usize, state: &PartitionState) -> Rotation {
    let snap = Snapshot::new(g, c, d);
    debug_assert_eq!(&snap.state, state);
    rotate(g, c, d, &snap)
}

pub(crate) fn rotate(g: &Graph, c: &Colouring, d: usize, snap: &Snapshot) -> Rotation {
    let tset = &snap.state.tset;
    if d == 0 || tset.is_empty() {
        // nobody has fewer than zero neighbours anywhere
        return Rotation::NotApplicable {
            sink: tset.first().copied(),
        };
    }
    let witness = |from: usize, to: usize| -> Option<usize> {
        c.class(from)
            .iter()
            .copied()
            .find(|&v| snap.in_core[v] && degree_into_class(g, c, v, to) < d)
    };
    let t = tset.len();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); t];
    for (i, &from) in tset.iter().enumerate() {
        for (j, &to) in tset.iter().enumerate() {
            if i != j && witness(from, to).is_some() {
                succ[i].push(j);
            }
        }
    }
    let Some(cycle) = find_cycle(&succ) else {
        let sink = (0..t).find(|&i| succ[i].is_empty()).map(|i| tset[i]);
        return Rotation::NotApplicable { sink };
    };
    let mut moved = Vec::with_capacity(cycle.len());
    for (pos, &i) in cycle.iter().enumerate() {
        let (from, to) = (tset[i], tset[cycle[(pos + 1) % cycle.len()]]);
        let v = witness(from, to).expect("cycle arcs have witnesses");
        moved.push((v, from, to));
    }
    let changes: Vec<(usize, usize)> = moved.iter().map(|&(v, _, to)| (v, to)).collect();
    Rotation::Applied {
        colouring: c.reassign(&changes),
        moved,
    }
}

/// First directed cycle found by depth-first search from the lowest node.
fn find_cycle(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut colour = vec![0u8; n];
    let mut stack: Vec<usize> = Vec::new();
    fn visit(
        u: usize,
        succ: &[Vec<usize>],
        colour: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        colour[u] = 1;
        stack.push(u);
        for &v in &succ[u] {
            if colour[v] == 1 {
                let start = stack.iter().position(|&x| x == v).expect("on stack");
                return Some(stack[start..].to_vec());
            }
            if colour[v] == 0 {
                if let Some(c) = visit(v, succ, colour, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        colour[u] = 2;
        None
    }
    (0..n).find_map(|s| {
        if colour[s] == 0 {
            visit(s, succ, &mut colour, &mut stack)
        } else {
            None
        }
    })
}

/// Tries to pull one inaccessible vertex into the accessible part and
/// recolour the rest of the inaccessible vertices from scratch.
pub fn b_vertex_exchange(g: &Graph, c: &Colouring, cfg: &SolveConfig) -> ExchangeOutcome {
    let snap = Snapshot::new(g, c, cfg.d);
    let mut session = Session::new(cfg, 0);
    exchange_in(g, c, &snap, &mut session)
}

/// Equitable colourings of `G[B - x]` with `b` classes, one per excluded vertex.
pub(crate) struct BRecolourings<'g> {
    g: &'g Graph,
    b_classes: Vec<usize>,
    b_members: Vec<usize>,
    cache: HashMap<usize, Option<Vec<(usize, usize)>>>,
}

pub(crate) enum Graft {
    Ready(Vec<(usize, usize)>),
    Unavailable,
    Violation(Box<ViolationReport>),
}

impl<'g> BRecolourings<'g> {
    pub(crate) fn new(g: &'g Graph, c: &Colouring, state: &PartitionState) -> Self {
        let b_classes = state.inaccessible_classes();
        let mut b_members: Vec<usize> = b_classes
            .iter()
            .flat_map(|&i| c.class(i).iter().copied())
            .collect();
        b_members.sort_unstable();
        Self {
            g,
            b_classes,
            b_members,
            cache: HashMap::new(),
        }
    }

    pub(crate) fn contains(&self, v: usize) -> bool {
        self.b_members.binary_search(&v).is_ok()
    }

    pub(crate) fn classes(&self) -> &[usize] {
        &self.b_classes
    }

    /// Reassignments giving `B - x` an equitable colouring on the
    /// inaccessible class ids.
    pub(crate) fn without(&mut self, x: usize, session: &mut Session<'_>) -> Graft {
        if let Some(hit) = self.cache.get(&x) {
            return match hit {
                Some(r) => Graft::Ready(r.clone()),
                None => Graft::Unavailable,
            };
        }
        let rest: Vec<usize> = self.b_members.iter().copied().filter(|&v| v != x).collect();
        let (sub, map) = self.g.induced_on(&rest);
        let result = match session.sub_solve(&sub, self.b_classes.len()) {
            Some(SolveOutcome::Solved { colouring }) => Some(
                (0..map.len())
                    .map(|i| (map[i], self.b_classes[colouring.class_of(i)]))
                    .collect::<Vec<_>>(),
            ),
            Some(SolveOutcome::TheoryViolation { report }) => return Graft::Violation(report),
            _ => None,
        };
        self.cache.insert(x, result.clone());
        match result {
            Some(r) => Graft::Ready(r),
            None => Graft::Unavailable,
        }
    }
}

/// Whether `next` is an acceptable successor of a stuck colouring.
pub(crate) fn improves(g: &Graph, next: &Colouring, d: usize, snap: &Snapshot) -> bool {
    if !is_valid(g, next, d) {
        return false;
    }
    match classify(next) {
        ColouringClass::Equitable => true,
        ColouringClass::NearEquitable => Snapshot::new(g, next, d).measure < snap.measure,
        _ => false,
    }
}

pub(crate) fn exchange_in(
    g: &Graph,
    c: &Colouring,
    snap: &Snapshot,
    session: &mut Session<'_>,
) -> ExchangeOutcome {
    let d = session.cfg.d;
    let state = &snap.state;
    if state.b == 0 || state.tset.is_empty() {
        return ExchangeOutcome::NotApplicable;
    }
    let mut b = BRecolourings::new(g, c, state);
    let k = c.k();
    let min = c.min_size();
    let is_min: Vec<bool> = (0..k).map(|i| c.size(i) == min).collect();
    let mut budget = EXCHANGE_BUDGET;

    for &vclass in &state.tset {
        let vcore: Vec<usize> = c
            .class(vclass)
            .iter()
            .copied()
            .filter(|&v| snap.in_core[v])
            .collect();
        for &v in &vcore {
            let tight: Vec<usize> = g
                .neighbours(v)
                .iter()
                .copied()
                .filter(|&x| b.contains(x))
                .filter(|&x| {
                    g.degree_where(x, |w| snap.in_core[w] && c.class_of(w) == vclass) == d + 1
                })
                .collect();

            // one tight neighbour: v leaves for another accessible class
            for &x in &tight {
                for target in state.accessible_classes() {
                    if target == vclass || budget == 0 {
                        continue;
                    }
                    if !movable_with_cores(g, c, d, &snap.in_core, v, target) {
                        continue;
                    }
                    let mut allowed = vec![true; k];
                    allowed[vclass] = false;
                    let Some(path) = snap.dg.shortest_path(&[target], &is_min, &allowed) else {
                        continue;
                    };
                    budget -= 1;
                    let mut next = c.clone();
                    let mut hops = Vec::new();
                    if path_moves_into(g, &mut next, d, &path, &snap.dg, &mut hops).is_err() {
                        continue;
                    }
                    if next.class_of(v) != vclass {
                        continue;
                    }
                    next = next.reassign(&[(v, target), (x, vclass)]);
                    let graft = match b.without(x, session) {
                        Graft::Ready(r) => r,
                        Graft::Unavailable => continue,
                        Graft::Violation(r) => return ExchangeOutcome::Violation(r),
                    };
                    let next = next.reassign(&graft);
                    if improves(g, &next, d, snap) {
                        return ExchangeOutcome::Applied {
                            colouring: next,
                            kind: MoveKind::BVertexExchange,
                        };
                    }
                }
            }

            // two non-adjacent tight neighbours: x replaces v, and v joins
            // the recoloured inaccessible part
            for (i, &x) in tight.iter().enumerate() {
                for &y in &tight[i + 1..] {
                    if budget == 0 {
                        return ExchangeOutcome::NotApplicable;
                    }
                    if g.has_edge(x, y) {
                        continue;
                    }
                    for drop in [x, y] {
                        budget = budget.saturating_sub(1);
                        let graft = match b.without(drop, session) {
                            Graft::Ready(r) => r,
                            Graft::Unavailable => continue,
                            Graft::Violation(r) => return ExchangeOutcome::Violation(r),
                        };
                        let mut next = c.reassign(&graft);
                        next = next.reassign(&[(drop, vclass)]);
                        let Some(home) = b
                            .classes()
                            .iter()
                            .copied()
                            .find(|&u| degree_into_class(g, &next, v, u) <= d)
                        else {
                            continue;
                        };
                        let next = next.reassign(&[(v, home)]);
                        if improves(g, &next, d, snap) {
                            return ExchangeOutcome::Applied {
                                colouring: next,
                                kind: MoveKind::ExchangeSwap,
                            };
                        }
                    }
                }
            }
        }
    }
    ExchangeOutcome::NotApplicable
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_two_cycle() {
        let succ = vec![vec![1], vec![0], vec![]];
        assert_eq!(find_cycle(&succ), Some(vec![0, 1]));
    }

    #[test]
    fn acyclic_has_none() {
        let succ = vec![vec![1, 2], vec![2], vec![]];
        assert_eq!(find_cycle(&succ), None);
    }

    #[test]
    fn three_cycle_after_tail() {
        let succ = vec![vec![1], vec![2], vec![3], vec![1]];
        assert_eq!(find_cycle(&succ), Some(vec![1, 2, 3]));
    }
}
