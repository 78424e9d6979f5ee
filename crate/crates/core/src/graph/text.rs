//! Adjacency-list text format.
//!
//! ```text
//! # comment
//! n 5
//! 0: 1 4
//! 1: 2
//! 2: 3
//! 3: 4
//! ```
//! Each line `u: v w …` adds edges `u-v`, `u-w`, …; listing an edge from
//! both ends is allowed.

use super::Graph;
use crate::error::{Error, Result};

pub fn from_adjacency_text(s: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, raw) in s.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        if let Some(rest) = line.strip_prefix("n ") {
            if n.is_some() {
                return Err(bad("duplicate node count"));
            }
            n = Some(rest.trim().parse().map_err(|_| bad("bad node count"))?);
            continue;
        }
        let (head, tail) = line.split_once(':').ok_or_else(|| bad("expected `u: v …`"))?;
        let u: usize = head.trim().parse().map_err(|_| bad("bad node"))?;
        for tok in tail.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| bad("bad neighbor"))?;
            edges.push((u, v));
        }
    }
    let n = n.ok_or_else(|| Error::Parse("missing `n <count>` line".into()))?;
    Graph::from_edges(n, &edges)
}

pub fn to_adjacency_text(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for u in 0..g.n() {
        let higher: Vec<String> = g.neighbors(u).into_iter().filter(|&v| v > u).map(|v| v.to_string()).collect();
        if !higher.is_empty() {
            out.push_str(&format!("{u}: {}\n", higher.join(" ")));
        }
    }
    out
}
