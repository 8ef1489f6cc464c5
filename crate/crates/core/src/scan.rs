//! Oracle scans of the equitable arboricity and d-degenerate colouring
//! conjectures over small graph families.
//!
//! For every graph the scan runs [`oracle_find`] for each `k` from the
//! smallest integer at least `(Δ + 1)/(d + 1)` up to `Δ + 1`. Any infeasible
//! pair is re-checked by a fresh oracle run before it is reported.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dimacs::serialize_dimacs;
use crate::error::{Error, Result};
use crate::generate::{derive_seed, random_bounded_degree_graph};
use crate::graph::Graph;
use crate::oracle::oracle_find;

/// Largest `n` accepted by the exhaustive labelled enumeration.
pub const EXHAUSTIVE_MAX_N: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjecture {
    /// Forest classes (`d = 1`) for every `k >= (Δ + 1)/2`.
    Evac,
    /// d-degenerate classes for every `k >= (Δ + 1)/(d + 1)`.
    Edc,
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "evac" => Ok(Conjecture::Evac),
            "edc" => Ok(Conjecture::Edc),
            other => Err(Error::InvalidConfig(format!(
                "unknown conjecture {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ScanMode {
    /// Every labelled graph on `1..=n_max` vertices.
    Exhaustive,
    /// `count` random graphs with `n` drawn from `1..=n_max`.
    Sample { count: usize },
}

impl FromStr for ScanMode {
    type Err = Error;

    /// `exhaustive` or `sample:COUNT`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "exhaustive" {
            return Ok(ScanMode::Exhaustive);
        }
        if let Some(count) = s.strip_prefix("sample:") {
            let count = count
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad sample count in {s:?}")))?;
            return Ok(ScanMode::Sample { count });
        }
        Err(Error::InvalidConfig(format!("unknown scan mode {s:?}")))
    }
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanMode::Exhaustive => write!(f, "exhaustive"),
            ScanMode::Sample { count } => write!(f, "sample:{count}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub conjecture: Conjecture,
    pub n_max: usize,
    pub mode: ScanMode,
    /// Degeneracy bounds to scan; ignored for [`Conjecture::Evac`].
    pub d_values: Vec<usize>,
    pub seed: u64,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
}

impl ScanConfig {
    pub fn new(conjecture: Conjecture, n_max: usize, mode: ScanMode) -> Self {
        Self {
            conjecture,
            n_max,
            mode,
            d_values: vec![0, 1, 2],
            seed: 0,
            jobs: None,
        }
    }

    fn ds(&self) -> Vec<usize> {
        match self.conjecture {
            Conjecture::Evac => vec![1],
            Conjecture::Edc => self.d_values.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    pub max_degree: usize,
    pub d: usize,
    pub k: usize,
    pub dimacs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub conjecture: Conjecture,
    pub d_values: Vec<usize>,
    pub n_min: usize,
    pub n_max: usize,
    pub mode: String,
    pub graphs_checked: u64,
    pub instances_checked: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl ScanReport {
    pub fn clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Smallest `k` covered by the conjecture for max degree `delta`.
pub fn lower_bound_k(delta: usize, d: usize) -> usize {
    (delta + 1).div_ceil(d + 1).max(1)
}

pub fn scan_conjecture(cfg: &ScanConfig) -> Result<ScanReport> {
    if cfg.mode == ScanMode::Exhaustive && cfg.n_max > EXHAUSTIVE_MAX_N {
        return Err(Error::InvalidConfig(format!(
            "exhaustive scans stop at n = {EXHAUSTIVE_MAX_N}"
        )));
    }
    if cfg.n_max > crate::oracle::ORACLE_MAX_N {
        return Err(Error::InvalidConfig(
            "n_max exceeds the oracle limit".into(),
        ));
    }
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(jobs) = cfg.jobs {
            builder = builder.num_threads(jobs.max(1));
        }
        builder
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?
    };
    let ds = cfg.ds();
    let results: Vec<(u64, Vec<Counterexample>)> = pool.install(|| match cfg.mode {
        ScanMode::Exhaustive => (1..=cfg.n_max)
            .flat_map(|n| {
                let pairs = n * (n - 1) / 2;
                (0u64..1 << pairs).map(move |code| (n, code))
            })
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(n, code)| check_graph(&labelled_graph(n, code), &ds))
            .collect(),
        ScanMode::Sample { count } => (0..count as u64)
            .into_par_iter()
            .map(|i| check_graph(&sample_graph(cfg.n_max, derive_seed(cfg.seed, i)), &ds))
            .collect(),
    });
    let graphs_checked = results.len() as u64;
    let instances_checked = results.iter().map(|r| r.0).sum();
    let counterexamples = results.into_iter().flat_map(|r| r.1).collect();
    Ok(ScanReport {
        conjecture: cfg.conjecture,
        d_values: ds,
        n_min: 1.min(cfg.n_max),
        n_max: cfg.n_max,
        mode: cfg.mode.to_string(),
        graphs_checked,
        instances_checked,
        counterexamples,
    })
}

/// Graph on `n` vertices whose edges are the set bits of `code`, pairs in
/// lexicographic order.
pub fn labelled_graph(n: usize, code: u64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .enumerate()
        .filter(|(i, _)| code >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    Graph::new(n, &edges).expect("pairs are simple")
}

fn sample_graph(n_max: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=n_max.max(1));
    let density = rng.gen_range(0.05..=0.95);
    random_bounded_degree_graph(n, n, density, rng.gen())
}

fn check_graph(g: &Graph, ds: &[usize]) -> (u64, Vec<Counterexample>) {
    let delta = g.max_degree();
    let mut instances = 0;
    let mut found = Vec::new();
    for &d in ds {
        for k in lower_bound_k(delta, d)..=delta + 1 {
            instances += 1;
            if oracle_find(g, d, k).feasible {
                continue;
            }
            // a fresh run must agree before anything is reported
            if !oracle_find(g, d, k).feasible {
                found.push(Counterexample {
                    n: g.n(),
                    max_degree: delta,
                    d,
                    k,
                    dimacs: serialize_dimacs(g),
                });
            }
        }
    }
    (instances, found)
}
