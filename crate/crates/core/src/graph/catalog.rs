//! Exhaustive catalogs of small graphs up to isomorphism.

use std::collections::BTreeSet;
use std::path::Path;

use super::{canonical_form, from_graph6, to_graph6, Graph};
use crate::error::{Error, Result};

/// Number of graphs on `n` nodes up to isomorphism, `n = 0..=7`.
pub const CATALOG_COUNTS: [usize; 8] = [1, 1, 2, 4, 11, 34, 156, 1044];

const DATA: [&str; 7] = [
    include_str!("../../data/graphs1.g6"),
    include_str!("../../data/graphs2.g6"),
    include_str!("../../data/graphs3.g6"),
    include_str!("../../data/graphs4.g6"),
    include_str!("../../data/graphs5.g6"),
    include_str!("../../data/graphs6.g6"),
    include_str!("../../data/graphs7.g6"),
];

/// All graphs on exactly `n ≤ 7` nodes, one per isomorphism class, from the
/// bundled graph6 files.
pub fn catalog(n: usize) -> Result<Vec<Graph>> {
    match n {
        0 => Ok(vec![Graph::empty(0)]),
        1..=7 => parse_lines(DATA[n - 1]),
        _ => Err(Error::CapExceeded { what: "bundled catalog nodes", size: n, cap: 7 }),
    }
}

pub fn load_catalog(path: &Path) -> Result<Vec<Graph>> {
    parse_lines(&std::fs::read_to_string(path)?)
}

fn parse_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(from_graph6)
        .collect()
}

/// Generate all graphs on `n` nodes up to isomorphism by adding one node
/// with every possible neighborhood to each graph on `n − 1` nodes.
/// Output is in canonical form, sorted by graph6 string.
pub fn enumerate_graphs(n: usize) -> Vec<Graph> {
    let mut level: Vec<Graph> = vec![Graph::empty(0)];
    for m in 1..=n {
        let mut seen = BTreeSet::new();
        for g in &level {
            for nb in 0u64..(1 << (m - 1)) {
                let mut h = Graph::from_edges(m, &g.edges()).expect("in range");
                for w in super::bits(nb) {
                    h.add_edge(m - 1, w).expect("in range");
                }
                seen.insert(to_graph6(&canonical_form(&h)));
            }
        }
        level = seen.iter().map(|s| from_graph6(s).expect("own encoding")).collect();
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::are_isomorphic;

    #[test]
    fn bundled_counts() {
        for n in 0..=7 {
            assert_eq!(catalog(n).unwrap().len(), CATALOG_COUNTS[n], "n = {n}");
        }
    }

    #[test]
    fn enumeration_matches_bundle() {
        for n in 0..=5 {
            let gen: BTreeSet<String> = enumerate_graphs(n).iter().map(to_graph6).collect();
            let bundled: BTreeSet<String> =
                catalog(n).unwrap().iter().map(|g| to_graph6(&canonical_form(g))).collect();
            assert_eq!(gen, bundled, "n = {n}");
        }
    }

    #[test]
    fn bundle_has_no_duplicates() {
        let six = catalog(6).unwrap();
        for i in 0..six.len() {
            for j in i + 1..six.len() {
                assert!(!are_isomorphic(&six[i], &six[j]));
            }
        }
    }
}
