//! DIMACS `.col` reading and writing.
//!
//! Files are 1-indexed (`p edge n m`, then `e u v` lines); graphs are
//! 0-indexed. The declared edge count is not enforced because many published
//! instances list each edge in both directions.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: &str| Error::Dimacs {
            line,
            message: message.to_string(),
        };
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("p") => {
                if n.is_some() {
                    return Err(err("duplicate problem line"));
                }
                match tokens.next() {
                    Some("edge") | Some("col") => {}
                    _ => return Err(err("expected `p edge <n> <m>`")),
                }
                let count = parse_count(tokens.next()).ok_or_else(|| err("bad vertex count"))?;
                parse_count(tokens.next()).ok_or_else(|| err("bad edge count"))?;
                if tokens.next().is_some() {
                    return Err(err("trailing tokens on problem line"));
                }
                n = Some(count);
            }
            Some("e") => {
                let n = n.ok_or_else(|| err("edge line before problem line"))?;
                let u = parse_count(tokens.next()).ok_or_else(|| err("bad edge endpoint"))?;
                let v = parse_count(tokens.next()).ok_or_else(|| err("bad edge endpoint"))?;
                if tokens.next().is_some() {
                    return Err(err("trailing tokens on edge line"));
                }
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(err(&format!("vertex {w} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(err(&format!("self-loop at vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(err(&format!("unknown line type `{other}`"))),
        }
    }
    let n = n.ok_or(Error::Dimacs {
        line: 0,
        message: "missing problem line".into(),
    })?;
    Graph::new(n, &edges)
}

fn parse_count(token: Option<&str>) -> Option<usize> {
    token?.parse().ok()
}

/// Canonical form: header, then edges sorted lexicographically with `u < v`.
pub fn serialize_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}
