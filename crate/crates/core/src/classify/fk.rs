use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{is_fs_perfect, split_facets};
use crate::error::{Error, Result};
use crate::graph::{bits, BaseKind, FkDescriptor, Graph};
use crate::polyhedra::{is_facet, stab_facets, LinearInequality};
use crate::scalar::Rational;

/// A hub-graph structure found in a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FkMatch {
    pub descriptor: FkDescriptor,
    /// `node_map[i]` is the node of the input playing descriptor node `i`.
    pub node_map: Vec<usize>,
}

/// Cyclic order of a 2-regular connected graph on `set`, starting at its
/// smallest node and stepping to the smaller neighbor first.
fn cycle_order(g: &Graph, set: u64) -> Option<Vec<usize>> {
    if bits(set).any(|v| (g.neighbors_mask(v) & set).count_ones() != 2) {
        return None;
    }
    let start = set.trailing_zeros() as usize;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = (g.neighbors_mask(start) & set).trailing_zeros() as usize;
    while cur != start {
        order.push(cur);
        let next = (g.neighbors_mask(cur) & set & !(1 << prev)).trailing_zeros() as usize;
        prev = cur;
        cur = next;
    }
    (order.len() == set.count_ones() as usize).then_some(order)
}

/// Find a node acting as hub over an odd hole or odd antihole rim with
/// `1 ≤ δ(hub) ≤ 2k`. Hubs are tried in index order; when the rim is both
/// (five nodes), the odd-hole reading is used.
pub fn fk_membership(g: &Graph) -> Option<FkMatch> {
    let n = g.n();
    if n < 6 || n % 2 == 1 {
        return None;
    }
    let k = (n - 2) / 2;
    let comp = g.complement();
    for hub in 0..n {
        let deg = g.degree(hub);
        if deg == 0 || deg > 2 * k {
            continue;
        }
        let rim = g.full_mask() & !(1 << hub);
        let (kind, order) = if let Some(o) = cycle_order(g, rim) {
            (BaseKind::OddHole, o)
        } else if let Some(o) = cycle_order(&comp, rim) {
            (BaseKind::OddAntihole, o)
        } else {
            continue;
        };
        let mut node_map = vec![hub];
        node_map.extend(&order);
        let hub_nbrs: Vec<usize> =
            (1..n).filter(|&i| g.has_edge(hub, node_map[i])).collect();
        let descriptor = FkDescriptor::new(k, hub_nbrs, kind).ok()?;
        return Some(FkMatch { descriptor, node_map });
    }
    None
}

/// `(α(G) − α(G ⊖ hub))·x_hub + Σ_{other} x ≤ α(G)` for an fs-perfect
/// hub graph, checked to be a facet and to be the unique full-support facet.
pub fn fs_full_support_facet(g: &Graph, cap: usize) -> Result<LinearInequality> {
    let m = fk_membership(g).ok_or_else(|| Error::Precondition("graph has no hub structure".into()))?;
    if !is_fs_perfect(g, cap)? {
        return Err(Error::Precondition("graph is not fs-perfect".into()));
    }
    let hub = m.node_map[0];
    let a = g.alpha();
    let a_destroyed = g.destroy(hub)?.0.alpha();
    let mut coeffs = vec![Rational::one(); g.n()];
    coeffs[hub] = Rational::from_integer(((a - a_destroyed) as i64).into());
    let ineq = LinearInequality::new(coeffs, Rational::from_integer((a as i64).into()));
    if !is_facet(&ineq, g) {
        return Err(Error::Inconsistent(format!("{ineq:?} is not a facet")));
    }
    let other = split_facets(g, stab_facets(g, cap)?).other;
    if other != vec![ineq.clone()] {
        return Err(Error::Inconsistent("full-support facet differs from enumerated facets".into()));
    }
    Ok(ineq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, g_emn, g_lt, h_k};
    use crate::scalar::int;

    #[test]
    fn membership() {
        let lt = fk_membership(&g_lt()).unwrap();
        assert_eq!(lt.descriptor.k, 2);
        assert_eq!(lt.descriptor.base_kind, BaseKind::OddHole);
        assert_eq!(lt.descriptor.hub_degree(), 3);
        let emn = fk_membership(&g_emn()).unwrap();
        assert_eq!(emn.descriptor.hub_degree(), 4);
        assert!(fk_membership(&cycle(7).unwrap()).is_none());
        let h3 = fk_membership(&h_k(3).unwrap()).unwrap();
        assert_eq!(h3.descriptor.base_kind, BaseKind::OddAntihole);
        assert_eq!(h3.descriptor.to_graph().unwrap().permute(&h3.node_map), h_k(3).unwrap());
    }

    #[test]
    fn emn_facet() {
        let f = fs_full_support_facet(&g_emn(), 10).unwrap();
        assert_eq!(f.a, vec![int(1); 6]);
        assert_eq!(f.beta, int(2));
    }
}
