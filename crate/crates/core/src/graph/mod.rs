//! Simple undirected graphs on at most 64 nodes.

mod catalog;
mod fk;
mod generators;
mod graph6;
mod iso;
mod ops;
mod text;

pub use catalog::{catalog, enumerate_graphs, load_catalog, CATALOG_COUNTS};
pub use fk::{BaseKind, FkDescriptor};
pub use generators::*;
pub use graph6::{from_graph6, to_graph6};
pub use iso::{are_isomorphic, canonical_form, canonical_labeling};
pub use ops::*;
pub use text::{from_adjacency_text, to_adjacency_text};

use crate::error::{Error, Result};

pub const MAX_NODES: usize = 64;

/// Simple undirected graph with nodes `0..n`.
///
/// Adjacency is stored as one neighbor bitmask per node. Labels record where
/// a node came from through operations and are ignored by equality.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    labels: Vec<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Panics if `n > 64`.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_NODES, "at most {MAX_NODES} nodes supported");
        Self { n, adj: vec![0; n], labels: (0..n).map(|i| i.to_string()).collect() }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_NODES {
            return Err(Error::InvalidParameter(format!("{n} nodes exceeds {MAX_NODES}")));
        }
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
    }

    pub fn full_mask(&self) -> u64 {
        mask_of(self.n)
    }

    pub fn check_node(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: v, n: self.n })
        }
    }

    /// Self-loops are rejected; repeated edges are idempotent.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at {u}")));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Open neighborhood as a bitmask.
    pub fn neighbors_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        bits(self.adj[v]).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in bits(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn is_stable(&self, set: u64) -> bool {
        bits(set).all(|v| self.adj[v] & set == 0)
    }

    pub fn is_clique(&self, set: u64) -> bool {
        bits(set).all(|v| (self.adj[v] | 1 << v) & set == set)
    }

    /// Induced subgraph on `set`, nodes renumbered in increasing order.
    /// Also returns the original index of each new node.
    pub fn induced(&self, set: u64) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = bits(set & self.full_mask()).collect();
        let mut g = Graph::empty(map.len());
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        g.labels = map.iter().map(|&u| self.labels[u].clone()).collect();
        (g, map)
    }

    /// Delete the nodes in `set`.
    pub fn remove_nodes(&self, set: u64) -> (Graph, Vec<usize>) {
        self.induced(self.full_mask() & !set)
    }

    /// Relabel: node `v` of `self` becomes node `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.adj[perm[u]] |= 1 << perm[v];
            g.adj[perm[v]] |= 1 << perm[u];
        }
        for v in 0..self.n {
            g.labels[perm[v]] = self.labels[v].clone();
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let full = self.full_mask();
        let mut g = self.clone();
        for v in 0..self.n {
            g.adj[v] = !self.adj[v] & full & !(1 << v);
        }
        g
    }

    /// `G ⊖ v`: delete `v` together with its neighbors.
    pub fn destroy(&self, v: usize) -> Result<(Graph, Vec<usize>)> {
        self.check_node(v)?;
        Ok(self.remove_nodes(self.adj[v] | 1 << v))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Two-coloring as a bitmask of the color-1 side, if one exists.
    pub fn bipartition(&self) -> Option<u64> {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in bits(self.adj[u]) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        stack.push(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some((0..self.n).filter(|&v| color[v] == 1).fold(0, |m, v| m | 1 << v))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.full_mask()
    }

    /// Every stable set as a bitmask, in increasing numeric order.
    pub fn stable_sets(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.stable_rec(0, 0, &mut out);
        out.sort_unstable();
        out
    }

    fn stable_rec(&self, v: usize, cur: u64, out: &mut Vec<u64>) {
        if v == self.n {
            out.push(cur);
            return;
        }
        self.stable_rec(v + 1, cur, out);
        if self.adj[v] & cur == 0 {
            self.stable_rec(v + 1, cur | 1 << v, out);
        }
    }

    /// Maximal cliques (Bron–Kerbosch with pivoting), each sorted, list sorted.
    pub fn maximal_cliques(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.bron_kerbosch(0, self.full_mask(), 0, &mut out);
        out.sort_unstable();
        out
    }

    fn bron_kerbosch(&self, r: u64, p: u64, x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = bits(p | x).max_by_key(|&u| (self.adj[u] & p).count_ones()).unwrap_or(0);
        let mut p = p;
        let mut x = x;
        for v in bits(p & !self.adj[pivot]) {
            self.bron_kerbosch(r | 1 << v, p & self.adj[v], x & self.adj[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }

    /// Maximum stable set size by branch and bound on bitmasks.
    pub fn alpha(&self) -> usize {
        self.alpha_of(self.full_mask())
    }

    /// Maximum stable set size within the node subset `set`.
    pub fn alpha_of(&self, set: u64) -> usize {
        fn rec(g: &Graph, p: u64, cur: usize, best: &mut usize) {
            if p == 0 {
                *best = (*best).max(cur);
                return;
            }
            if cur + p.count_ones() as usize <= *best {
                return;
            }
            // Every maximal stable set meets the closed neighborhood of v.
            let v = bits(p).min_by_key(|&v| (g.adj[v] & p).count_ones()).expect("nonempty");
            for w in bits((g.adj[v] | 1 << v) & p) {
                rec(g, p & !g.adj[w] & !(1 << w), cur + 1, best);
            }
        }
        let mut best = 0;
        rec(self, set & self.full_mask(), 0, &mut best);
        best
    }
}

/// Bitmask with the low `n` bits set.
pub fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate set bits in increasing order.
pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub fn mask_from(nodes: &[usize]) -> u64 {
    nodes.iter().fold(0, |m, &v| m | 1 << v)
}
