//! Graph-class predicates.

mod fk;
mod report;

pub use fk::{fk_membership, fs_full_support_facet, FkMatch};
pub use report::{
    classify, ClassificationReport, Evidence, Verdict, FS_PERFECT, LS_PLUS_PERFECT, MINIMALLY_IMPERFECT, NEAR_BIPARTITE,
    NEAR_PERFECT, PERFECT,
};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{bits, Graph};
use crate::polyhedra::{induced_odd_antiholes, induced_odd_holes, stab_facets, LinearInequality};

pub fn alpha(g: &Graph) -> usize {
    g.alpha()
}

/// Node sets inducing an odd hole or odd antihole on at least 5 nodes.
pub fn minimally_imperfect_subgraphs(g: &Graph) -> Result<Vec<u64>> {
    let mut out = induced_odd_holes(g)?;
    out.extend(induced_odd_antiholes(g)?);
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Perfect iff there is no induced odd hole or odd antihole.
pub fn is_perfect(g: &Graph) -> Result<bool> {
    Ok(minimally_imperfect_subgraphs(g)?.is_empty())
}

pub fn is_minimally_imperfect(g: &Graph) -> Result<bool> {
    Ok(g.n() >= 5 && minimally_imperfect_subgraphs(g)? == vec![g.full_mask()])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NearPerfectRoute {
    /// Stability numbers of minimally imperfect subgraphs and their destructions.
    Combinatorial,
    /// Every facet is nonnegativity, a clique, or the full-rank inequality.
    Facet,
}

/// Facet classes of `STAB(g)`.
#[derive(Clone, Debug, Default)]
pub struct FacetSplit {
    pub nonneg: Vec<LinearInequality>,
    pub clique: Vec<LinearInequality>,
    pub other: Vec<LinearInequality>,
}

pub fn split_facets(g: &Graph, facets: Vec<LinearInequality>) -> FacetSplit {
    let mut s = FacetSplit::default();
    for f in facets {
        if f.is_nonneg() {
            s.nonneg.push(f);
        } else if f.as_unit_set_sum().is_some_and(|k| g.is_clique(k)) {
            s.clique.push(f);
        } else {
            s.other.push(f);
        }
    }
    s
}

pub fn full_rank_inequality(g: &Graph) -> LinearInequality {
    LinearInequality::set_sum(g.n(), g.full_mask(), g.alpha() as i64)
}

/// Combinatorial characterization: for every minimally imperfect `G' ⊆ G`,
/// `α(G') = α(G)` and `α(G' − Γ[v]) = α(G) − 1` for all nodes `v` of `G`.
fn near_perfect_combinatorial(g: &Graph) -> Result<bool> {
    let a = g.alpha();
    for s in minimally_imperfect_subgraphs(g)? {
        if g.alpha_of(s) != a {
            return Ok(false);
        }
        for v in 0..g.n() {
            let closed = g.neighbors_mask(v) | 1 << v;
            if g.alpha_of(s & !closed) + 1 != a {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn near_perfect_facet(g: &Graph, cap: usize) -> Result<bool> {
    let full = full_rank_inequality(g);
    Ok(split_facets(g, stab_facets(g, cap)?).other.iter().all(|f| *f == full))
}

pub fn is_near_perfect(g: &Graph, route: NearPerfectRoute, cap: usize) -> Result<bool> {
    match route {
        NearPerfectRoute::Combinatorial => near_perfect_combinatorial(g),
        NearPerfectRoute::Facet => near_perfect_facet(g, cap),
    }
}

/// Nonnegativity, cliques, and at most one further facet, which must have
/// full support.
pub fn is_fs_perfect(g: &Graph, cap: usize) -> Result<bool> {
    let other = split_facets(g, stab_facets(g, cap)?).other;
    Ok(other.len() <= 1 && other.iter().all(LinearInequality::is_full_support))
}

/// `G ⊖ v` is bipartite for every node `v`.
pub fn is_near_bipartite(g: &Graph) -> bool {
    non_bipartite_destruction(g).is_none()
}

/// A node whose destruction leaves a non-bipartite graph.
pub fn non_bipartite_destruction(g: &Graph) -> Option<usize> {
    (0..g.n()).find(|&v| !g.destroy(v).expect("in range").0.is_bipartite())
}

/// Some node `v` with `G − v` bipartite.
pub fn bipartite_deletion(g: &Graph) -> Option<usize> {
    (0..g.n()).find(|&v| g.remove_nodes(1 << v).0.is_bipartite())
}

pub fn nodes_of(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_join, cycle, g_emn, h_k, wheel};

    #[test]
    fn perfection() {
        assert!(is_perfect(&cycle(6).unwrap()).unwrap());
        assert!(!is_perfect(&cycle(5).unwrap()).unwrap());
        assert_eq!(minimally_imperfect_subgraphs(&cycle(5).unwrap()).unwrap(), vec![0b11111]);
        assert!(is_minimally_imperfect(&cycle(7).unwrap().complement()).unwrap());
        assert!(minimally_imperfect_subgraphs(&g_emn()).unwrap().contains(&0b111110));
    }

    #[test]
    fn near_perfect_routes() {
        for (g, expect) in [
            (cycle(5).unwrap(), true),
            (wheel(5).unwrap(), false),
            (h_k(2).unwrap(), true),
            (h_k(3).unwrap(), true),
            (complete(4).unwrap(), true),
        ] {
            for route in [NearPerfectRoute::Combinatorial, NearPerfectRoute::Facet] {
                assert_eq!(is_near_perfect(&g, route, 10).unwrap(), expect, "{route:?}");
            }
        }
    }

    #[test]
    fn fs_perfect_cases() {
        assert!(is_fs_perfect(&wheel(5).unwrap(), 10).unwrap());
        assert!(is_fs_perfect(&cycle(6).unwrap(), 10).unwrap());
        let c5 = cycle(5).unwrap();
        assert!(!is_fs_perfect(&complete_join(&c5, &c5), 10).unwrap());
    }

    #[test]
    fn near_bipartite_cases() {
        assert!(is_near_bipartite(&cycle(5).unwrap()));
        assert!(is_near_bipartite(&complete(5).unwrap()));
        assert!(is_near_bipartite(&wheel(5).unwrap()));
        assert!(is_near_bipartite(&cycle(7).unwrap()));
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!is_near_bipartite(&two_triangles));
    }
}
