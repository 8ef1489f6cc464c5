//! Degeneracy orderings and the canonical core `V*`.
//!
//! A graph is d-degenerate when it admits an ordering in which every vertex
//! has at most `d` earlier neighbours. Among such orderings we care about the
//! position `p` of the last vertex with exactly `d` earlier neighbours; the
//! prefix up to `p` is `V*`. Minimising `p` yields exactly the d-core
//! (iteratively delete vertices of degree below `d`), which is what
//! [`compute_vstar`] returns.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Witness that a graph is not d-degenerate: a non-empty vertex set whose
/// induced subgraph has minimum degree at least `d + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotDegenerate {
    pub d: usize,
    pub witness: Vec<usize>,
}

/// An ordering with at most `d` earlier neighbours per vertex, its `p`, and
/// the prefix `V*` of the first `p` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyCertificate {
    pub ordering: Vec<usize>,
    pub d: usize,
    pub p: usize,
    pub vstar: VertexSet,
}

impl DegeneracyCertificate {
    /// Re-derives `p` and `V*` from the ordering and checks them.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        match ordering_p(g, &self.ordering, self.d) {
            Some(p) => {
                p == self.p
                    && self.vstar.len() == p
                    && self.ordering[..p].iter().all(|&v| self.vstar.contains(v))
            }
            None => false,
        }
    }
}

/// Repeatedly removes a minimum-degree vertex (lowest id on ties) and returns
/// the reversed removal sequence, or the stuck remainder when every remaining
/// vertex has more than `d` neighbours.
pub fn peel_order(g: &Graph, d: usize) -> Result<Vec<usize>, NotDegenerate> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some(&(dv, v)) = queue.first() {
        if dv > d {
            let witness = queue.iter().map(|&(_, w)| w).collect::<BTreeSet<_>>();
            return Err(NotDegenerate {
                d,
                witness: witness.into_iter().collect(),
            });
        }
        queue.pop_first();
        removed[v] = true;
        order.push(v);
        for &w in g.neighbours(v) {
            if !removed[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    order.reverse();
    Ok(order)
}

pub fn is_degenerate(g: &Graph, d: usize) -> bool {
    let all: Vec<usize> = (0..g.n()).collect();
    subset_is_degenerate(g, &all, d)
}

/// The d-core: what survives iterated deletion of vertices of degree `< d`.
/// Defined for every graph; for `d = 0` it is all of `V(G)`.
pub fn d_core(g: &Graph, d: usize) -> VertexSet {
    let all: Vec<usize> = (0..g.n()).collect();
    VertexSet::from_iter(g.n(), subset_core(g, &all, d)).expect("core vertices are in range")
}

/// `V*` for a d-degenerate graph.
pub fn compute_vstar(g: &Graph, d: usize) -> Result<VertexSet> {
    if !is_degenerate(g, d) {
        return Err(Error::NotDegenerate { d });
    }
    Ok(d_core(g, d))
}

/// A d-degeneracy ordering whose `p` is minimum: the core ordered by peeling,
/// followed by the non-core vertices in reverse deletion order.
pub fn assemble_min_p_ordering(g: &Graph, d: usize) -> Result<DegeneracyCertificate> {
    let vstar = compute_vstar(g, d)?;
    let core = vstar.to_vec();
    let (core_graph, map) = g.induced_on(&core);
    let mut ordering: Vec<usize> = peel_order(&core_graph, d)
        .map_err(|_| Error::NotDegenerate { d })?
        .into_iter()
        .map(|v| map[v])
        .collect();
    let mut outside = core_deletion_order(g, d);
    outside.reverse();
    ordering.extend(outside);
    let p = core.len();
    Ok(DegeneracyCertificate {
        ordering,
        d,
        p,
        vstar,
    })
}

/// `p` for an ordering, or `None` if some vertex has more than `d` earlier
/// neighbours or the ordering is not a permutation of `V(G)`.
pub fn ordering_p(g: &Graph, ordering: &[usize], d: usize) -> Option<usize> {
    let n = g.n();
    if ordering.len() != n {
        return None;
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in ordering.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return None;
        }
        position[v] = i;
    }
    let mut p = 0;
    for (i, &v) in ordering.iter().enumerate() {
        let earlier = g.degree_where(v, |w| position[w] < i);
        if earlier > d {
            return None;
        }
        if earlier == d {
            p = i + 1;
        }
    }
    Some(p)
}

/// Order in which vertices outside the d-core get deleted.
fn core_deletion_order(g: &Graph, d: usize) -> Vec<usize> {
    let all: Vec<usize> = (0..g.n()).collect();
    Local::new(g, &all).peel(d, false).0
}

/// Whether `G[members]` is d-degenerate. `members` must be sorted.
pub fn subset_is_degenerate(g: &Graph, members: &[usize], d: usize) -> bool {
    Local::new(g, members).peel(d + 1, true).1.is_empty()
}

/// The d-core of `G[members]`, sorted. `members` must be sorted.
pub fn subset_core(g: &Graph, members: &[usize], d: usize) -> Vec<usize> {
    Local::new(g, members).peel(d, false).1
}

/// Induced subgraph on a sorted member list with local indices.
struct Local<'a> {
    members: &'a [usize],
    adj: Vec<Vec<usize>>,
}

impl<'a> Local<'a> {
    fn new(g: &Graph, members: &'a [usize]) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let adj = members
            .iter()
            .map(|&u| {
                g.neighbours(u)
                    .iter()
                    .filter_map(|w| members.binary_search(w).ok())
                    .collect()
            })
            .collect();
        Self { members, adj }
    }

    /// Deletes vertices of current degree `< threshold` until none remain.
    /// Returns the deletion sequence and the sorted survivors (global ids).
    /// With `stop_early`, the deletion sequence is not recorded.
    fn peel(&self, threshold: usize, stop_early: bool) -> (Vec<usize>, Vec<usize>) {
        let len = self.members.len();
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut gone = vec![false; len];
        let mut stack: Vec<usize> = (0..len).filter(|&i| deg[i] < threshold).collect();
        for &i in &stack {
            gone[i] = true;
        }
        let mut deleted = Vec::new();
        let mut head = 0;
        while head < stack.len() {
            let i = stack[head];
            head += 1;
            if !stop_early {
                deleted.push(self.members[i]);
            }
            for &j in &self.adj[i] {
                if !gone[j] {
                    deg[j] -= 1;
                    if deg[j] < threshold {
                        gone[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        let survivors = (0..len)
            .filter(|&i| !gone[i])
            .map(|i| self.members[i])
            .collect();
        (deleted, survivors)
    }
}
