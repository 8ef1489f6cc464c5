//! The move digraph on colour classes and the accessibility structure built
//! on top of it.
//!
//! There is an arc `i -> j` when some vertex of class `i` can join class `j`
//! without breaking d-degeneracy; the least such vertex is the arc's
//! representative. Moving representatives along a directed path shifts one
//! unit of size from the first class to the last while leaving every other
//! class size unchanged.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::colouring::Colouring;
use crate::degeneracy::{subset_core, subset_is_degenerate};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `in_core[v]` is true when `v` lies in the core of its own class.
pub fn class_cores(g: &Graph, c: &Colouring, d: usize) -> Vec<bool> {
    let mut in_core = vec![false; g.n()];
    for i in 0..c.k() {
        for v in subset_core(g, c.class(i), d) {
            in_core[v] = true;
        }
    }
    in_core
}

/// Number of neighbours of `v` in the core of class `j`.
pub fn degree_into_core(g: &Graph, c: &Colouring, in_core: &[bool], v: usize, j: usize) -> usize {
    g.degree_where(v, |w| in_core[w] && c.class_of(w) == j)
}

/// Number of neighbours of `v` in class `j`.
pub fn degree_into_class(g: &Graph, c: &Colouring, v: usize, j: usize) -> usize {
    g.degree_where(v, |w| c.class_of(w) == j)
}

/// Whether `G[C_j + v]` is d-degenerate.
pub fn is_movable(g: &Graph, c: &Colouring, d: usize, v: usize, j: usize) -> bool {
    let members = c.class(j);
    let core = subset_core(g, members, d);
    if g.degree_where(v, |w| core.binary_search(&w).is_ok()) <= d {
        return true;
    }
    joined_is_degenerate(g, members, v, d)
}

pub(crate) fn movable_with_cores(
    g: &Graph,
    c: &Colouring,
    d: usize,
    in_core: &[bool],
    v: usize,
    j: usize,
) -> bool {
    degree_into_core(g, c, in_core, v, j) <= d || joined_is_degenerate(g, c.class(j), v, d)
}

/// Whether `G[members + extra]` is d-degenerate, `members` sorted.
pub(crate) fn joined_is_degenerate(g: &Graph, members: &[usize], extra: usize, d: usize) -> bool {
    let mut joined = members.to_vec();
    if let Err(pos) = joined.binary_search(&extra) {
        joined.insert(pos, extra);
    }
    subset_is_degenerate(g, &joined, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub representative: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveDigraph {
    k: usize,
    reps: Vec<Option<usize>>,
}

impl MoveDigraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn representative(&self, from: usize, to: usize) -> Option<usize> {
        self.reps[from * self.k + to]
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.representative(from, to).is_some()
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.k).flat_map(move |from| {
            (0..self.k).filter_map(move |to| {
                self.representative(from, to).map(|representative| Arc {
                    from,
                    to,
                    representative,
                })
            })
        })
    }

    pub fn successors(&self, from: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.k).filter(move |&to| self.has_arc(from, to))
    }

    /// Classes within `allowed` that reach some class in `targets` using only
    /// classes in `allowed`. Targets themselves count when allowed.
    pub fn reaching(&self, targets: &[usize], allowed: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.k];
        let mut queue = VecDeque::new();
        for &t in targets {
            if allowed[t] && !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
        while let Some(t) = queue.pop_front() {
            for s in 0..self.k {
                if allowed[s] && !seen[s] && self.has_arc(s, t) {
                    seen[s] = true;
                    queue.push_back(s);
                }
            }
        }
        seen
    }

    /// Shortest directed path from any source to any target, staying inside
    /// `allowed`. Sources are tried in the given order, successors by id.
    pub fn shortest_path(
        &self,
        sources: &[usize],
        is_target: &[bool],
        allowed: &[bool],
    ) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.k];
        let mut seen = vec![false; self.k];
        let mut queue = VecDeque::new();
        for &s in sources {
            if allowed[s] && !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            if is_target[u] {
                let mut path = vec![u];
                let mut cur = u;
                while parent[cur] != usize::MAX {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for v in self.successors(u) {
                if allowed[v] && !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

/// Builds the move digraph; each arc's representative is the least movable
/// vertex of the source class.
pub fn build_move_digraph(g: &Graph, c: &Colouring, d: usize) -> MoveDigraph {
    let in_core = class_cores(g, c, d);
    build_with_cores(g, c, d, &in_core)
}

pub(crate) fn build_with_cores(
    g: &Graph,
    c: &Colouring,
    d: usize,
    in_core: &[bool],
) -> MoveDigraph {
    let k = c.k();
    let mut reps = vec![None; k * k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            reps[i * k + j] = c
                .class(i)
                .iter()
                .copied()
                .find(|&v| movable_with_cores(g, c, d, in_core, v, j));
        }
    }
    MoveDigraph { k, reps }
}

/// A block of the accessible part: classes that reach `terminal`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub classes: Vec<usize>,
    pub terminal: usize,
}

/// Accessible / inaccessible split and the last-component structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionState {
    /// `accessible[i]`: class `i` reaches a minimum-size class.
    pub accessible: Vec<bool>,
    pub a: usize,
    pub b: usize,
    pub min_size: usize,
    pub components: Vec<Component>,
    /// Classes of the last component.
    pub d_minus: Vec<usize>,
    /// Terminal of the last component.
    pub c_minus: Option<usize>,
    /// Cut class chosen inside the last component, if any exists.
    pub u_minus: Option<usize>,
    /// Classes of the last component cut off from `c_minus` by `u_minus`.
    pub tset: Vec<usize>,
}

impl PartitionState {
    pub fn t(&self) -> usize {
        self.tset.len()
    }

    pub fn accessible_classes(&self) -> Vec<usize> {
        (0..self.accessible.len())
            .filter(|&i| self.accessible[i])
            .collect()
    }

    pub fn inaccessible_classes(&self) -> Vec<usize> {
        (0..self.accessible.len())
            .filter(|&i| !self.accessible[i])
            .collect()
    }

    pub fn in_tset(&self, class: usize) -> bool {
        self.tset.contains(&class)
    }
}

pub fn partition_state(dg: &MoveDigraph, c: &Colouring) -> PartitionState {
    let k = c.k();
    let min_size = c.min_size();
    let everything = vec![true; k];
    let minimum: Vec<usize> = (0..k).filter(|&i| c.size(i) == min_size).collect();
    let accessible = dg.reaching(&minimum, &everything);
    let a = accessible.iter().filter(|&&x| x).count();

    // Greedy decomposition: terminals are taken in class-id order among
    // minimum-size classes not yet absorbed.
    let mut absorbed = vec![false; k];
    let mut components = Vec::new();
    for &terminal in &minimum {
        if absorbed[terminal] {
            continue;
        }
        let reach = dg.reaching(&[terminal], &everything);
        let classes: Vec<usize> = (0..k)
            .filter(|&i| accessible[i] && !absorbed[i] && reach[i])
            .collect();
        for &i in &classes {
            absorbed[i] = true;
        }
        components.push(Component { classes, terminal });
    }

    let (d_minus, c_minus) = match components.last() {
        Some(last) => (last.classes.clone(), Some(last.terminal)),
        None => (Vec::new(), None),
    };

    let mut u_minus = None;
    let mut tset = Vec::new();
    if let Some(cm) = c_minus {
        let mut best: Option<(usize, usize, Vec<usize>)> = None;
        for &cut in &d_minus {
            let cutoff = cut_off_by(dg, &d_minus, cm, cut);
            if cutoff.is_empty() {
                continue;
            }
            let better = match &best {
                None => true,
                Some((count, id, _)) => (cutoff.len(), cut) < (*count, *id),
            };
            if better {
                best = Some((cutoff.len(), cut, cutoff));
            }
        }
        if let Some((_, cut, cutoff)) = best {
            u_minus = Some(cut);
            tset = cutoff;
        }
    }

    PartitionState {
        accessible,
        a,
        b: k - a,
        min_size,
        components,
        d_minus,
        c_minus,
        u_minus,
        tset,
    }
}

/// Classes of `within` other than `cut` that cannot reach `terminal` once
/// `cut` is deleted.
pub fn cut_off_by(dg: &MoveDigraph, within: &[usize], terminal: usize, cut: usize) -> Vec<usize> {
    let mut allowed = vec![false; dg.k()];
    for &i in within {
        allowed[i] = true;
    }
    allowed[cut] = false;
    let reach = if cut == terminal {
        vec![false; dg.k()]
    } else {
        dg.reaching(&[terminal], &allowed)
    };
    within
        .iter()
        .copied()
        .filter(|&i| i != cut && !reach[i])
        .collect()
}

/// Moves one representative along each arc of `path`, starting with the
/// last arc so every hop is checked against a target class that has not yet
/// been touched.
pub fn move_along_path(
    g: &Graph,
    c: &Colouring,
    d: usize,
    path: &[usize],
    dg: &MoveDigraph,
) -> Result<Colouring> {
    let mut next = c.clone();
    let mut changes = Vec::new();
    path_moves_into(g, &mut next, d, path, dg, &mut changes)?;
    Ok(next)
}

/// As [`move_along_path`] but in place, appending `(vertex, from, to)` for
/// every hop.
pub(crate) fn path_moves_into(
    g: &Graph,
    c: &mut Colouring,
    d: usize,
    path: &[usize],
    dg: &MoveDigraph,
    changes: &mut Vec<(usize, usize, usize)>,
) -> Result<()> {
    for (i, &u) in path.iter().enumerate() {
        if path[..i].contains(&u) {
            return Err(Error::InvalidColouring(format!("path revisits class {u}")));
        }
    }
    for hop in (0..path.len().saturating_sub(1)).rev() {
        let (from, to) = (path[hop], path[hop + 1]);
        let rep = dg
            .representative(from, to)
            .ok_or(Error::MissingArc { from, to })?;
        if c.class_of(rep) != from || !joined_is_degenerate(g, c.class(to), rep, d) {
            return Err(Error::StaleRepresentative {
                vertex: rep,
                from,
                to,
            });
        }
        c.move_in_place(rep, to)?;
        changes.push((rep, from, to));
    }
    Ok(())
}
