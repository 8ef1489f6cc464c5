//! Colourings, validity checks, and equitable / near-equitable classification.

use serde::{Deserialize, Serialize};

use crate::degeneracy::subset_is_degenerate;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A map from vertices to class ids `0..k`, with per-class member lists.
///
/// Class ids are stable labels. The size-sorted view used for "smallest" and
/// "largest" class is derived on demand by [`Colouring::sorted_classes`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawColouring", into = "RawColouring")]
pub struct Colouring {
    k: usize,
    assignment: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Colouring {
    pub fn new(k: usize, assignment: Vec<usize>) -> Result<Self> {
        if k == 0 && !assignment.is_empty() {
            return Err(Error::InvalidColouring("k = 0 with vertices".into()));
        }
        let mut classes = vec![Vec::new(); k];
        for (v, &c) in assignment.iter().enumerate() {
            if c >= k {
                return Err(Error::InvalidColouring(format!(
                    "vertex {v} has class {c} but k = {k}"
                )));
            }
            classes[c].push(v);
        }
        Ok(Self {
            k,
            assignment,
            classes,
        })
    }

    /// Vertex `v` goes to class `v mod k`.
    pub fn round_robin(n: usize, k: usize) -> Self {
        assert!(k > 0, "need at least one class");
        Self::new(k, (0..n).map(|v| v % k).collect()).expect("round robin is in range")
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    #[inline]
    pub fn class_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Sorted members of class `i`.
    #[inline]
    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    #[inline]
    pub fn size(&self, i: usize) -> usize {
        self.classes[i].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn min_size(&self) -> usize {
        self.classes.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_size(&self) -> usize {
        self.classes.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Class ids ordered by (size, id): the first entry plays the role of the
    /// smallest class and the last of the largest.
    pub fn sorted_classes(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.k).collect();
        ids.sort_by_key(|&i| (self.classes[i].len(), i));
        ids
    }

    /// Moves `v` into class `to`.
    pub fn apply_move(&self, v: usize, to: usize) -> Result<Colouring> {
        let mut next = self.clone();
        next.move_in_place(v, to)?;
        Ok(next)
    }

    pub(crate) fn move_in_place(&mut self, v: usize, to: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            });
        }
        if to >= self.k {
            return Err(Error::InvalidColouring(format!("no class {to}")));
        }
        let from = self.assignment[v];
        if from == to {
            return Err(Error::NoOpMove {
                vertex: v,
                class: to,
            });
        }
        let pos = self.classes[from]
            .binary_search(&v)
            .expect("class lists mirror the assignment");
        self.classes[from].remove(pos);
        let pos = self.classes[to].binary_search(&v).unwrap_err();
        self.classes[to].insert(pos, v);
        self.assignment[v] = to;
        Ok(())
    }

    /// Applies several reassignments at once. Entries whose target equals the
    /// current class are skipped.
    pub fn reassign(&self, changes: &[(usize, usize)]) -> Colouring {
        let mut assignment = self.assignment.clone();
        for &(v, to) in changes {
            assignment[v] = to;
        }
        Colouring::new(self.k, assignment).expect("targets are existing classes")
    }
}

#[derive(Serialize, Deserialize)]
struct RawColouring {
    k: usize,
    assignment: Vec<usize>,
}

impl TryFrom<RawColouring> for Colouring {
    type Error = Error;

    fn try_from(raw: RawColouring) -> Result<Self> {
        Colouring::new(raw.k, raw.assignment)
    }
}

impl From<Colouring> for RawColouring {
    fn from(c: Colouring) -> Self {
        RawColouring {
            k: c.k,
            assignment: c.assignment,
        }
    }
}

/// Where a colouring sits relative to equitability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColouringClass {
    Equitable,
    NearEquitable,
    OtherValid,
    InvalidClass(usize),
}

/// Result of checking that every class induces a d-degenerate graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub failing_classes: Vec<usize>,
}

pub fn verify_colouring(g: &Graph, c: &Colouring, d: usize) -> Result<VerifyReport> {
    if c.n() != g.n() {
        return Err(Error::InvalidColouring(format!(
            "colouring covers {} vertices, graph has {}",
            c.n(),
            g.n()
        )));
    }
    let failing_classes: Vec<usize> = (0..c.k())
        .filter(|&i| !subset_is_degenerate(g, c.class(i), d))
        .collect();
    Ok(VerifyReport {
        valid: failing_classes.is_empty(),
        failing_classes,
    })
}

/// Same check as [`verify_colouring`] when sizes are already known to match.
pub(crate) fn is_valid(g: &Graph, c: &Colouring, d: usize) -> bool {
    (0..c.k()).all(|i| subset_is_degenerate(g, c.class(i), d))
}

/// Classifies a size profile. Only sizes matter, so `sizes` may be in any
/// order; validity is judged elsewhere.
pub fn classify_sizes(sizes: &[usize], n: usize, k: usize) -> ColouringClass {
    debug_assert_eq!(sizes.iter().sum::<usize>(), n);
    if k == 0 {
        return ColouringClass::Equitable;
    }
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    let lo = sorted[0];
    let hi = sorted[k - 1];
    if hi - lo <= 1 {
        return ColouringClass::Equitable;
    }
    let floor = n / k;
    let ceil = n.div_ceil(k);
    let first_ok = lo + 1 >= floor && lo <= floor;
    let last_ok = hi >= ceil && hi <= ceil + 1;
    let middle_ok = sorted[1..k - 1].iter().all(|&s| floor <= s && s <= ceil);
    let gap_ok = (2..=3).contains(&(hi - lo));
    if k >= 2 && first_ok && middle_ok && last_ok && gap_ok {
        ColouringClass::NearEquitable
    } else {
        ColouringClass::OtherValid
    }
}

pub fn classify(c: &Colouring) -> ColouringClass {
    classify_sizes(&c.sizes(), c.n(), c.k())
}

/// Full classification including a validity check.
pub fn classify_checked(g: &Graph, c: &Colouring, d: usize) -> ColouringClass {
    if let Some(bad) = (0..c.k()).find(|&i| !subset_is_degenerate(g, c.class(i), d)) {
        return ColouringClass::InvalidClass(bad);
    }
    classify(c)
}

/// JSON document describing a colouring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouringDocument {
    pub k: usize,
    pub d: usize,
    pub assignment: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub valid: bool,
}

impl ColouringDocument {
    pub fn describe(g: &Graph, c: &Colouring, d: usize) -> Self {
        Self {
            k: c.k(),
            d,
            assignment: c.assignment().to_vec(),
            class_sizes: c.sizes(),
            valid: c.n() == g.n() && is_valid(g, c, d),
        }
    }

    pub fn colouring(&self) -> Result<Colouring> {
        Colouring::new(self.k, self.assignment.clone())
    }
}
