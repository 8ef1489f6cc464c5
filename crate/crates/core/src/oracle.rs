//! Exhaustive search for equitable d-degenerate k-colourings of small graphs.
//!
//! Vertices are assigned highest-degree first. Branches are cut when a class
//! would exceed its equitable size, when the remaining vertices can no longer
//! lift every class to `floor(n/k)`, or when the receiving class would stop
//! being d-degenerate. Classes are interchangeable, so a vertex may only open
//! the lowest-numbered empty class.

use serde::{Deserialize, Serialize};

use crate::colouring::Colouring;
use crate::graph::Graph;

/// Largest graph the bitset search accepts.
pub const ORACLE_MAX_N: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub feasible: bool,
    pub witness: Option<Colouring>,
    pub nodes_explored: u64,
}

/// Decides whether `g` has an equitable d-degenerate k-colouring.
///
/// Panics if `g` has more than [`ORACLE_MAX_N`] vertices; the search is
/// exponential and intended for graphs of a dozen or so vertices.
pub fn oracle_find(g: &Graph, d: usize, k: usize) -> OracleVerdict {
    let n = g.n();
    assert!(
        n <= ORACLE_MAX_N,
        "oracle limited to {ORACLE_MAX_N} vertices"
    );
    if k == 0 {
        return OracleVerdict {
            feasible: n == 0,
            witness: None,
            nodes_explored: 0,
        };
    }
    let adj: Vec<u128> = (0..n)
        .map(|v| g.neighbours(v).iter().fold(0u128, |m, &w| m | 1 << w))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut search = Search {
        adj,
        order,
        d,
        k,
        floor: n / k,
        big_classes: n % k,
        masks: vec![0; k],
        sizes: vec![0; k],
        at_ceiling: 0,
        assignment: vec![usize::MAX; n],
        nodes: 0,
    };
    let feasible = search.place(0, 0);
    let witness = feasible.then(|| {
        Colouring::new(k, search.assignment.clone()).expect("search assigns every vertex")
    });
    OracleVerdict {
        feasible,
        witness,
        nodes_explored: search.nodes,
    }
}

struct Search {
    adj: Vec<u128>,
    order: Vec<usize>,
    d: usize,
    k: usize,
    floor: usize,
    big_classes: usize,
    masks: Vec<u128>,
    sizes: Vec<usize>,
    at_ceiling: usize,
    assignment: Vec<usize>,
    nodes: u64,
}

impl Search {
    fn place(&mut self, depth: usize, opened: usize) -> bool {
        self.nodes += 1;
        if depth == self.order.len() {
            return true;
        }
        let remaining = self.order.len() - depth;
        let deficit: usize = self
            .sizes
            .iter()
            .map(|&s| self.floor.saturating_sub(s))
            .sum();
        if deficit > remaining {
            return false;
        }
        let v = self.order[depth];
        let limit = (opened + 1).min(self.k);
        for j in 0..limit {
            let size = self.sizes[j];
            let grows_big = size == self.floor;
            if size > self.floor || (grows_big && self.at_ceiling == self.big_classes) {
                continue;
            }
            if !self.accepts(j, v) {
                continue;
            }
            self.masks[j] |= 1 << v;
            self.sizes[j] += 1;
            self.at_ceiling += usize::from(grows_big);
            self.assignment[v] = j;
            if self.place(depth + 1, opened.max(j + 1)) {
                return true;
            }
            self.assignment[v] = usize::MAX;
            self.at_ceiling -= usize::from(grows_big);
            self.sizes[j] -= 1;
            self.masks[j] &= !(1 << v);
        }
        false
    }

    /// Whether class `j` stays d-degenerate after receiving `v`.
    fn accepts(&self, j: usize, v: usize) -> bool {
        let class = self.masks[j];
        if (self.adj[v] & class).count_ones() as usize <= self.d {
            return true;
        }
        mask_is_degenerate(&self.adj, class | 1 << v, self.d)
    }
}

fn mask_is_degenerate(adj: &[u128], mut set: u128, d: usize) -> bool {
    loop {
        let mut peeled = false;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (adj[v] & set).count_ones() as usize <= d {
                set &= !(1 << v);
                peeled = true;
            }
        }
        if set == 0 {
            return true;
        }
        if !peeled {
            return false;
        }
    }
}
