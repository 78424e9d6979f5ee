//! Canonical labeling by individualization and refinement.
//!
//! Cells are refined to an equitable coloring; the first non-singleton cell
//! is split by individualizing each member in turn, skipping members that
//! are twins of an already tried one. The canonical form is the relabeled
//! graph with the lexicographically smallest adjacency code.

use super::{bits, Graph};

fn refine(g: &Graph, colors: &mut Vec<usize>) {
    let n = g.n();
    let mut count = colors.iter().copied().max().map_or(0, |c| c + 1);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = bits(g.neighbors_mask(v)).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0; n];
        let mut c = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                c += 1;
            }
            next[sigs[i].2] = c;
        }
        let new_count = if n == 0 { 0 } else { c + 1 };
        *colors = next;
        if new_count == count {
            return;
        }
        count = new_count;
    }
}

fn code(g: &Graph, perm: &[usize]) -> Vec<u64> {
    let n = g.n();
    let mut inv = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    (0..n)
        .map(|i| bits(g.neighbors_mask(inv[i])).fold(0u64, |m, w| m | 1 << perm[w]))
        .collect()
}

fn search(g: &Graph, mut colors: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    refine(g, &mut colors);
    let n = g.n();
    let mut sizes = vec![0usize; n.max(1)];
    for &c in &colors {
        sizes[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
        let c = code(g, &colors);
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            *best = Some((c, colors));
        }
        return;
    };
    let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        let nv = g.neighbors_mask(v);
        let twin = tried.iter().any(|&w| {
            let nw = g.neighbors_mask(w);
            nv & !(1 << w) == nw & !(1 << v)
        });
        if twin {
            continue;
        }
        tried.push(v);
        let indiv: Vec<usize> = (0..n)
            .map(|u| 2 * colors[u] + usize::from(u != v && colors[u] == target))
            .collect();
        search(g, indiv, best);
    }
}

/// Permutation `p` such that `g.permute(&p)` is the canonical form.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let mut best = None;
    search(g, vec![0; g.n()], &mut best);
    best.map(|(_, p)| p).unwrap_or_default()
}

pub fn canonical_form(g: &Graph) -> Graph {
    g.permute(&canonical_labeling(g))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_form(a) == canonical_form(b)
}
