//! Graph operations. All of them return new graphs with contiguous indices.

use super::{bits, mask_from, Graph};
use crate::error::{Error, Result};

/// Disjoint union of `g1` and `g2` plus every edge between them. Nodes of
/// `g2` are shifted by `g1.n()`.
pub fn complete_join(g1: &Graph, g2: &Graph) -> Graph {
    let n1 = g1.n();
    let mut g = Graph::empty(n1 + g2.n());
    for (u, v) in g1.edges() {
        g.add_edge(u, v).expect("in range");
    }
    for (u, v) in g2.edges() {
        g.add_edge(n1 + u, n1 + v).expect("in range");
    }
    for u in 0..n1 {
        for v in 0..g2.n() {
            g.add_edge(u, n1 + v).expect("in range");
        }
    }
    let mut labels: Vec<String> = g1.labels().iter().map(|l| format!("a{l}")).collect();
    labels.extend(g2.labels().iter().map(|l| format!("b{l}")));
    g.set_labels(labels);
    g
}

/// Replace edge `e` by a path with `path_len` edges through new nodes
/// `n, n+1, …` running from `e.0` to `e.1`.
pub fn odd_subdivide(g: &Graph, e: (usize, usize), path_len: usize) -> Result<Graph> {
    let (a, b) = e;
    if !g.has_edge(a, b) {
        return Err(Error::MissingEdge(a, b));
    }
    if path_len % 2 == 0 {
        return Err(Error::InvalidParameter(format!("path length must be odd, got {path_len}")));
    }
    if path_len == 1 {
        return Ok(g.clone());
    }
    let n = g.n();
    let added = path_len - 1;
    let mut out = grow(g, added)?;
    out.remove_edge(a, b)?;
    let mut prev = a;
    for i in 0..added {
        out.add_edge(prev, n + i)?;
        prev = n + i;
    }
    out.add_edge(prev, b)?;
    let mut labels = g.labels().to_vec();
    labels.extend((0..added).map(|i| format!("s{a}-{b}.{i}")));
    out.set_labels(labels);
    Ok(out)
}

/// Node positions after a k-stretch of node `v` in a graph on `n` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StretchNodes {
    pub v1: usize,
    pub v2: usize,
    pub u: usize,
}

impl StretchNodes {
    pub fn for_graph(n: usize) -> Self {
        Self { v1: n - 1, v2: n, u: n + 1 }
    }

    /// New index of an old node `w ≠ v`.
    pub fn old_to_new(v: usize, w: usize) -> usize {
        if w > v {
            w - 1
        } else {
            w
        }
    }
}

/// k-stretch of node `v`: remove `v`, add `v1`, `v2`, `u` with `v_i`
/// adjacent to `{u} ∪ A_i`. Remaining nodes keep their order; `v1, v2, u`
/// become the last three nodes (see [`StretchNodes`]).
pub fn k_stretch(g: &Graph, v: usize, a1: &[usize], a2: &[usize]) -> Result<Graph> {
    g.check_node(v)?;
    for &w in a1.iter().chain(a2) {
        g.check_node(w)?;
    }
    let m1 = mask_from(a1);
    let m2 = mask_from(a2);
    if m1 == 0 || m2 == 0 {
        return Err(Error::Precondition("A1 and A2 must be nonempty".into()));
    }
    if m1 | m2 != g.neighbors_mask(v) {
        return Err(Error::Precondition(format!("A1 ∪ A2 must equal the neighborhood of {v}")));
    }
    if !g.is_clique(m1 & m2) {
        return Err(Error::Precondition("A1 ∩ A2 must be a clique".into()));
    }
    let n = g.n();
    let (base, _) = g.remove_nodes(1 << v);
    let mut out = grow(&base, 3)?;
    let nodes = StretchNodes::for_graph(n);
    out.add_edge(nodes.v1, nodes.u)?;
    out.add_edge(nodes.v2, nodes.u)?;
    for w in bits(m1) {
        out.add_edge(nodes.v1, StretchNodes::old_to_new(v, w))?;
    }
    for w in bits(m2) {
        out.add_edge(nodes.v2, StretchNodes::old_to_new(v, w))?;
    }
    let mut labels = base.labels().to_vec();
    let lv = &g.labels()[v];
    labels.extend([format!("{lv}.1"), format!("{lv}.2"), format!("{lv}.u")]);
    out.set_labels(labels);
    Ok(out)
}

/// Clique subdivision of edge `e = (v1, v2)` inside clique `k`: delete the
/// edge, add `n` adjacent to `v1` and `n+1` adjacent to `v2`, join `n` to
/// `n+1`, and join both new nodes to every node of `K \ {v1, v2}`.
pub fn clique_subdivide(g: &Graph, k: &[usize], e: (usize, usize)) -> Result<Graph> {
    for &w in k {
        g.check_node(w)?;
    }
    let km = mask_from(k);
    if !g.is_clique(km) {
        return Err(Error::Precondition("K is not a clique".into()));
    }
    let (v1, v2) = e;
    if v1 == v2 || km >> v1 & 1 == 0 || km >> v2 & 1 == 0 {
        return Err(Error::Precondition(format!("edge {v1}-{v2} is not inside K")));
    }
    let n = g.n();
    let mut out = grow(g, 2)?;
    out.remove_edge(v1, v2)?;
    out.add_edge(v1, n)?;
    out.add_edge(n, n + 1)?;
    out.add_edge(n + 1, v2)?;
    for w in bits(km & !(1 << v1) & !(1 << v2)) {
        out.add_edge(w, n)?;
        out.add_edge(w, n + 1)?;
    }
    let mut labels = g.labels().to_vec();
    labels.extend([format!("c{v1}-{v2}.0"), format!("c{v1}-{v2}.1")]);
    out.set_labels(labels);
    Ok(out)
}

/// Copy of `g` with `extra` isolated nodes appended.
fn grow(g: &Graph, extra: usize) -> Result<Graph> {
    let n = g.n() + extra;
    if n > super::MAX_NODES {
        return Err(Error::InvalidParameter(format!("result would have {n} nodes")));
    }
    Graph::from_edges(n, &g.edges())
}
