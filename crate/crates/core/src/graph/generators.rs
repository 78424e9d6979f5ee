//! Named graphs.
//!
//! Cycles use 0-based indexing: node `i` is adjacent to `i+1 mod n`.

use super::{BaseKind, FkDescriptor, Graph};
use crate::error::{Error, Result};

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    Ok(Graph::empty(n).complement())
}

pub fn empty(n: usize) -> Result<Graph> {
    if n > super::MAX_NODES {
        return Err(Error::InvalidParameter(format!("{n} nodes exceeds {}", super::MAX_NODES)));
    }
    Ok(Graph::empty(n))
}

pub fn complement_of_cycle(n: usize) -> Result<Graph> {
    Ok(cycle(n)?.complement())
}

/// Hub `0` joined to the rim cycle `1..=n`.
pub fn wheel(n: usize) -> Result<Graph> {
    Ok(super::complete_join(&complete(1)?, &cycle(n)?))
}

/// `H^k`: antihole rim on `1..=2k+1`, hub `0` adjacent to `1..=2k`.
pub fn h_k(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("H_k needs k >= 2, got {k}")));
    }
    FkDescriptor::new(k, (1..=2 * k).collect(), BaseKind::OddAntihole)?.to_graph()
}

/// Odd hole `1..=5` with hub `0` adjacent to `1, 2, 3`.
pub fn g_lt() -> Graph {
    FkDescriptor::new(2, vec![1, 2, 3], BaseKind::OddHole)
        .and_then(|d| d.to_graph())
        .expect("valid descriptor")
}

/// Odd hole `1..=5` with hub `0` adjacent to `1, 2, 3, 4`.
pub fn g_emn() -> Graph {
    FkDescriptor::new(2, vec![1, 2, 3, 4], BaseKind::OddHole)
        .and_then(|d| d.to_graph())
        .expect("valid descriptor")
}

pub fn f_k(d: &FkDescriptor) -> Result<Graph> {
    d.to_graph()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::are_isomorphic;

    #[test]
    fn named_graphs() {
        let c5 = cycle(5).unwrap();
        assert_eq!(c5.edges(), vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        let h2 = h_k(2).unwrap();
        assert_eq!(h2.n(), 6);
        assert_eq!(h2.degree(0), 4);
        assert!(!h2.has_edge(0, 5));
        let (rim, _) = h2.remove_nodes(1);
        assert_eq!(rim, complement_of_cycle(5).unwrap());
        assert!(are_isomorphic(&g_emn(), &h2));
        assert!(!are_isomorphic(&g_lt(), &h2));
        assert!(h_k(1).is_err());
        assert!(cycle(2).is_err());
        assert_eq!(wheel(5).unwrap().edge_count(), 10);
        assert_eq!(path(4).unwrap().edge_count(), 3);
    }

    #[test]
    fn h_k_alpha_two() {
        for k in 2..=5 {
            assert_eq!(h_k(k).unwrap().alpha(), 2);
        }
    }
}
